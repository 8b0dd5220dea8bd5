#include <algorithm>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "strata_internal.hpp"

namespace solvlie {

GridSpec GridSpec::parse(const std::string& spec) {
  GridSpec g;
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ';')) {
    auto eq = part.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("grid field without '=': " + part);
    std::string key = part.substr(0, eq), val = part.substr(eq + 1);
    if (key == "values") {
      std::stringstream vs(val);
      std::string v;
      while (std::getline(vs, v, ',')) g.values.push_back(parse_rational(v));
    } else if (key == "sample") {
      g.sample = std::stoull(val);
    } else if (key == "seed") {
      g.seed = std::stoull(val);
    } else {
      throw std::invalid_argument("unknown grid field: " + key);
    }
  }
  if (g.values.empty()) throw std::invalid_argument("grid needs values=...");
  return g;
}

std::string GridSpec::str() const {
  std::ostringstream s;
  s << "values=";
  for (std::size_t i = 0; i < values.size(); ++i) s << (i ? "," : "") << to_string(values[i]);
  if (sample) s << ";sample=" << sample << ";seed=" << seed;
  return s.str();
}

namespace {

std::vector<Rational> vals(std::initializer_list<int> nums, std::initializer_list<Rational> extra = {}) {
  std::vector<Rational> v;
  for (int x : nums) v.emplace_back(x);
  v.insert(v.end(), extra.begin(), extra.end());
  return v;
}

}  // namespace

GridSpec default_grid(const BaseModel& b) {
  GridSpec g;
  if (b.abelian_slice || b.coordinates.size() > 5)
    g.values = vals({0, 1, -1, 2});
  else
    g.values = vals({0, 1, -1, 2, -2, 3}, {Rational(1, 2)});
  return g;
}

GridSpec dense_grid(const BaseModel& b) {
  GridSpec g;
  g.values = vals({0, 1, -1, 2, -2, 3, -3}, {Rational(1, 2), Rational(-1, 2), Rational(1, 3)});
  g.sample = b.abelian_slice ? 6000 : 12000;
  g.seed = 7;
  return g;
}

namespace {

// Index -> derivation for one grid.
struct PointSource {
  std::size_t total = 0;
  std::function<Matrix(std::size_t)> at;
};

PointSource product_source(const BaseModel& b, const std::vector<Rational>& v) {
  PointSource s;
  const std::size_t k = b.coordinates.size(), base = v.size();
  s.total = 1;
  for (std::size_t i = 0; i < k; ++i) s.total *= base;
  const std::size_t n = b.k.dim();
  s.at = [&b, v, k, base, n](std::size_t idx) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < k; ++i) {
      const Rational& c = v[idx % base];
      idx /= base;
      if (c != 0) m = m + b.coordinates[i].scaled(c);
    }
    return m;
  };
  return s;
}

// Block upper-triangular slice: 1x1 blocks (v), 2x2 blocks [[a, b], [-1, a]] with
// b in {1, 2}, entries above the blocks in {0, 1}; in ext2ad mode the last
// diagonal entry is 0.
struct Layout {
  std::vector<unsigned> parts;
  std::vector<std::pair<std::size_t, std::size_t>> upper;
  std::size_t count = 0;
};

PointSource slice_source(const BaseModel& b, const std::vector<Rational>& v) {
  const std::size_t n = b.k.dim();
  const std::size_t free = b.mode == Mode::Ext2Ad ? n - 1 : n;
  std::vector<Layout> layouts;
  std::function<void(std::vector<unsigned>&, std::size_t)> rec = [&](std::vector<unsigned>& parts, std::size_t left) {
    if (left == 0) {
      Layout l;
      l.parts = parts;
      if (b.mode == Mode::Ext2Ad) l.parts.push_back(0);  // fixed zero block
      std::vector<std::size_t> owner;
      l.count = 1;
      for (std::size_t p = 0; p < l.parts.size(); ++p) {
        unsigned sz = l.parts[p] == 0 ? 1 : l.parts[p];
        for (unsigned t = 0; t < sz; ++t) owner.push_back(p);
        if (l.parts[p] == 1) l.count *= v.size();
        if (l.parts[p] == 2) l.count *= 2 * v.size();
      }
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (owner[i] != owner[j]) l.upper.emplace_back(i, j);
      l.count <<= l.upper.size();
      layouts.push_back(std::move(l));
      return;
    }
    for (unsigned p : {1u, 2u})
      if (p <= left) {
        parts.push_back(p);
        rec(parts, left - p);
        parts.pop_back();
      }
  };
  std::vector<unsigned> parts;
  rec(parts, free);
  PointSource s;
  for (const auto& l : layouts) s.total += l.count;
  s.at = [layouts, v, n](std::size_t idx) {
    std::size_t li = 0;
    while (idx >= layouts[li].count) idx -= layouts[li++].count;
    const Layout& l = layouts[li];
    Matrix m(n, n);
    std::size_t at = 0;
    for (unsigned p : l.parts) {
      if (p == 0) {
        ++at;
      } else if (p == 1) {
        m(at, at) = v[idx % v.size()];
        idx /= v.size();
        ++at;
      } else {
        const Rational& a = v[idx % v.size()];
        idx /= v.size();
        m(at, at) = m(at + 1, at + 1) = a;
        m(at, at + 1) = 1 + idx % 2;
        idx /= 2;
        m(at + 1, at) = -1;
        at += 2;
      }
    }
    for (const auto& [i, j] : l.upper) {
      m(i, j) = idx % 2;
      idx /= 2;
    }
    return m;
  };
  return s;
}

struct Tally {
  std::size_t points = 0, members = 0, rejected = 0, out_of_field = 0, unmatched = 0;
  std::map<std::string, std::size_t> hits, witnessed, formal;
  std::map<std::string, std::vector<std::pair<std::size_t, std::string>>> samples;
};

std::string param_text(const FamilyTemplate& t, const std::vector<QuadScalar>& p) {
  if (p.empty()) return "-";
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? ", " : "") + t.params[i] + "=" + p[i].str();
  return s;
}

void run_point(const BaseModel& b, const Matrix& d, std::size_t idx, Tally& t) {
  ++t.points;
  if (!admissible(b, d)) {
    ++t.rejected;
    return;
  }
  ++t.members;
  try {
    Reduction r = reduce(b, d);
    ++t.hits[r.name];
    ++(r.exact ? t.witnessed : t.formal)[r.name];
    auto& s = t.samples[r.name];
    if (s.size() < 3) s.emplace_back(idx, param_text(b.find(r.name), r.params));
  } catch (const IrrationalRealEigenvalue&) {
    ++t.out_of_field;
  } catch (const IrreducibleFactorDegreeTooHigh&) {
    ++t.out_of_field;
  } catch (const NoMatch&) {
    ++t.unmatched;
  }
}

std::vector<std::size_t> indices(const PointSource& src, const GridSpec& g) {
  std::vector<std::size_t> out;
  if (g.sample == 0 || g.sample >= src.total) {
    out.resize(src.total);
    for (std::size_t i = 0; i < src.total; ++i) out[i] = i;
    return out;
  }
  std::mt19937_64 rng(g.seed);
  std::uniform_int_distribution<std::size_t> dist(0, src.total - 1);
  std::set<std::size_t> picked;
  while (picked.size() < g.sample) picked.insert(dist(rng));
  return {picked.begin(), picked.end()};
}

void check_instances(const BaseModel& b, const FamilyTemplate& t, FamilyReport& fr) {
  for (const auto& v : domain_samples(t, 20)) {
    Matrix inst = t.instantiate(v);
    LieAlgebra l = family_algebra(b, inst);
    if (!admissible(b, inst)) throw std::logic_error(b.key + " " + t.name + ": instance outside the class");
    Reduction r = reduce(b, inst);
    std::vector<QuadScalar> expect;
    for (const auto& x : v) expect.push_back(QuadScalar::of(x));
    if (r.name != t.name || r.params != expect || !r.exact)
      throw std::logic_error(b.key + " " + t.name + ": instance reads back as " + r.name);
    if (fr.instance_checks++ == 0) fr.fingerprint = fingerprint(l);
  }
}

}  // namespace

std::vector<std::string> ClassificationReport::names() const {
  std::vector<std::string> out;
  for (const auto& f : families)
    if (f.hits) out.push_back(f.name);
  return out;
}

namespace {

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : ",") + x;
  return s;
}

}  // namespace

GoldenMismatch::GoldenMismatch(const std::vector<std::string>& found, const std::vector<std::string>& expected)
    : std::runtime_error("classified families {" + join(found) + "} differ from expected {" + join(expected) + "}") {}

ClassificationReport classify(const BaseModel& b, const GridSpec& grid, const SweepOptions& opts) {
  PointSource src = b.abelian_slice ? slice_source(b, grid.values) : product_source(b, grid.values);
  std::vector<std::size_t> idx = indices(src, grid);
  const unsigned jobs = std::max(1u, opts.jobs);
  std::vector<Tally> tallies(jobs);
  const std::size_t chunk = (idx.size() + jobs - 1) / jobs;
  auto work = [&](unsigned w) {
    for (std::size_t i = w * chunk; i < std::min(idx.size(), (w + 1) * chunk); ++i)
      run_point(b, src.at(idx[i]), idx[i], tallies[w]);
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < jobs; ++w) pool.emplace_back(work, w);
  }

  ClassificationReport rep;
  rep.base = b.key;
  rep.mode = b.mode;
  rep.grid = grid.str();
  rep.h1_dim = b.coordinates.size();
  rep.expected = b.golden;
  for (const auto& t : tallies) {  // chunks are in index order, so samples merge deterministically
    rep.points += t.points;
    rep.members += t.members;
    rep.rejected += t.rejected;
    rep.out_of_field += t.out_of_field;
    rep.unmatched += t.unmatched;
  }
  for (const auto& t : b.templates) {
    FamilyReport fr;
    fr.name = t.name;
    fr.domain = t.domain;
    fr.params = t.params;
    for (const auto& tl : tallies) {
      if (auto it = tl.hits.find(t.name); it != tl.hits.end()) fr.hits += it->second;
      if (auto it = tl.witnessed.find(t.name); it != tl.witnessed.end()) fr.witnessed += it->second;
      if (auto it = tl.formal.find(t.name); it != tl.formal.end()) fr.formal += it->second;
      if (auto it = tl.samples.find(t.name); it != tl.samples.end())
        for (const auto& [i, s] : it->second)
          if (fr.samples.size() < 3) fr.samples.push_back(s);
    }
    check_instances(b, t, fr);
    rep.families.push_back(std::move(fr));
  }
  rep.golden_match = rep.unmatched == 0 && rep.names() == rep.expected;
  if (opts.throw_on_mismatch && !rep.golden_match) throw GoldenMismatch(rep.names(), rep.expected);
  return rep;
}

ClassificationReport classify_ext1(const std::string& key, const GridSpec* grid, const SweepOptions& opts) {
  const BaseModel& b = base_model(key, Mode::Ext1);
  return classify(b, grid ? *grid : default_grid(b), opts);
}

ClassificationReport classify_ext2_ad(const std::string& key, const GridSpec* grid, const SweepOptions& opts) {
  const BaseModel& b = base_model(key, Mode::Ext2Ad);
  return classify(b, grid ? *grid : default_grid(b), opts);
}

}  // namespace solvlie
