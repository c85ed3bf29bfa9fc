#include <map>
#include <set>

#include "doctest.h"
#include "glc/counting.hpp"
#include "glc/error.hpp"
#include "oracles.hpp"

using namespace glc::counting;
using glc::Error;
using glc::ErrorCode;
using glc::group::ContextPtr;
using glc::group::Flavor;
using glc::linalg::Matrix;
using glc::linalg::Vec;
using namespace oracle;

namespace {

ContextPtr make(Flavor f, int n, int q) { return Context::build(f, n, q); }

/// Distinct spans of k-tuples of vectors that have full rank k.
std::uint64_t subspaces_by_spanning(const glc::gf::Field& f, int n, int k) {
  const auto vs = all_vectors(f, n);
  std::set<std::set<Vec>> found;
  std::uint64_t full = 1;
  for (int i = 0; i < k; ++i) full *= static_cast<std::uint64_t>(f.q());
  std::vector<std::size_t> pick(static_cast<std::size_t>(k), 0);
  while (true) {
    std::vector<Vec> rows;
    for (auto i : pick) rows.push_back(vs[i]);
    auto span = span_set(f, n, rows);
    if (span.size() == full) found.insert(std::move(span));
    std::size_t i = 0;
    while (i < pick.size() && ++pick[i] == vs.size()) pick[i++] = 0;
    if (i == pick.size()) break;
  }
  return found.size();
}

Vec unit(int n, int i) {
  Vec v(static_cast<std::size_t>(n), 0);
  v[static_cast<std::size_t>(i)] = 1;
  return v;
}

/// Number of invertible matrices mapping every listed span onto itself.
std::uint64_t stabilizer_size(const glc::gf::Field& f, int n, const std::vector<std::vector<Vec>>& spans) {
  std::vector<std::set<Vec>> sets;
  for (const auto& s : spans) sets.push_back(span_set(f, n, s));
  std::uint64_t count = 0;
  for (const auto& g : all_invertible(f, n)) {
    bool ok = true;
    for (std::size_t i = 0; i < spans.size() && ok; ++i)
      for (const auto& v : spans[i]) ok = ok && sets[i].count(glc::linalg::row_times(v, g));
    count += ok;
  }
  return count;
}

/// Cyclic by definition: some vector whose orbit under m spans V.
bool cyclic_by_definition(const Matrix& m) {
  const auto& f = m.field();
  const int n = m.n();
  for (const auto& v : all_vectors(f, n)) {
    std::vector<Vec> rows = {v};
    for (int i = 1; i < n; ++i) rows.push_back(glc::linalg::row_times(rows.back(), m));
    std::uint64_t full = 1;
    for (int i = 0; i < n; ++i) full *= static_cast<std::uint64_t>(f.q());
    if (span_set(f, n, rows).size() == full) return true;
  }
  return false;
}

std::map<std::size_t, std::size_t> counts(const Census& c) {
  std::map<std::size_t, std::size_t> out;
  for (const auto& r : c.rows) out[r.m] = r.c();
  return out;
}

}  // namespace

TEST_CASE("q_binomial and q_factorial") {
  CHECK(q_binomial(2, 1, 2) == 3);
  CHECK(q_binomial(4, 2, 2) == 35);
  CHECK(q_binomial(5, 0, 7) == 1);
  CHECK(q_factorial(3, 2) == 21);
  CHECK_THROWS_AS(q_binomial(2, 3, 2), Error);
  CHECK_THROWS_AS(q_binomial(2, -1, 2), Error);
  for (int q : {2, 3}) {
    const auto& f = glc::gf::field_new(q);
    for (int n = 1; n <= (q == 2 ? 4 : 3); ++n)
      for (int x = 0; x <= n; ++x) {
        CAPTURE(q);
        CAPTURE(n);
        CAPTURE(x);
        CHECK(q_binomial(n, x, q) == subspaces_by_spanning(f, n, x));
        CHECK(q_binomial(n, x, q) == gaussian_binomial(n, x, static_cast<std::uint64_t>(q)));
      }
  }
}

TEST_CASE("flag_count is the index of a standard flag stabilizer") {
  CHECK(flag_count(2, 2, {1}) == 3);
  CHECK(flag_count(3, 2, {1, 2}) == 21);
  CHECK(flag_count(4, 5, {}) == 1);
  CHECK_THROWS_AS(flag_count(3, 2, {2, 1}), Error);
  CHECK_THROWS_AS(flag_count(3, 2, {3}), Error);
  CHECK_THROWS_AS(flag_count(3, 2, {0, 1}), Error);
  for (int q : {2, 3})
    for (int n = 1; n <= 3; ++n) {
      const auto& f = glc::gf::field_new(q);
      const BigInt order = glc::group::gl_order(n, q);
      for (unsigned mask = 0; mask < (1u << (n - 1)); ++mask) {
        std::vector<int> type;
        std::vector<std::vector<Vec>> spans;
        for (int d = 1; d < n; ++d) {
          if (!(mask >> (d - 1) & 1)) continue;
          type.push_back(d);
          std::vector<Vec> rows;
          for (int i = 0; i < d; ++i) rows.push_back(unit(n, i));
          spans.push_back(rows);
        }
        CAPTURE(q);
        CAPTURE(n);
        CAPTURE(mask);
        CHECK(flag_count(n, q, type) == order / stabilizer_size(f, n, spans));
      }
    }
}

TEST_CASE("boolean_index is the index of a coordinate decomposition stabilizer") {
  CHECK(boolean_index(2, {1, 1}, 3) == 12);
  CHECK(boolean_index(2, {2}, 5) == 1);
  CHECK(boolean_index(3, {1, 1, 1}, 2) == 168);
  CHECK_THROWS_AS(boolean_index(3, {1, 1}, 2), Error);
  CHECK_THROWS_AS(boolean_index(2, {0, 2}, 2), Error);
  CHECK_THROWS_AS(boolean_index(2, {}, 2), Error);
  const std::vector<std::vector<int>> shapes = {{1}, {2}, {1, 1}, {3}, {1, 2}, {2, 1}, {1, 1, 1}};
  for (int q : {2, 3}) {
    const auto& f = glc::gf::field_new(q);
    for (const auto& dims : shapes) {
      int n = 0;
      std::vector<std::vector<Vec>> spans;
      for (int d : dims) n += d;
      int at = 0;
      for (int d : dims) {
        std::vector<Vec> rows;
        for (int i = 0; i < d; ++i) rows.push_back(unit(n, at + i));
        at += d;
        spans.push_back(rows);
      }
      CAPTURE(q);
      CAPTURE(dims.size());
      CHECK(boolean_index(n, dims, q) == glc::group::gl_order(n, q) / stabilizer_size(f, n, spans));
    }
  }
}

TEST_CASE("ordered factorizations") {
  using F = std::vector<std::vector<std::uint64_t>>;
  CHECK(ordered_factorizations(1) == F{{}});
  auto six = ordered_factorizations(6);
  std::sort(six.begin(), six.end());
  CHECK(six == F{{2, 3}, {3, 2}, {6}});
  auto eight = ordered_factorizations(8);
  std::sort(eight.begin(), eight.end());
  CHECK(eight == F{{2, 2, 2}, {2, 4}, {4, 2}, {8}});
  for (std::uint64_t m = 1; m <= 10000; ++m) {
    const auto c = count_ordered_factorizations(m);
    CHECK(c <= m * m);
  }
  for (std::uint64_t m = 1; m <= 1500; ++m) {
    const auto list = ordered_factorizations(m);
    CHECK(list.size() == count_ordered_factorizations(m));
    for (const auto& t : list) {
      std::uint64_t p = 1;
      for (auto d : t) {
        CHECK(d >= 2);
        p *= d;
      }
      CHECK(p == m);
    }
  }
}

TEST_CASE("decompositions agree with a brute-force search over subspace sets") {
  CHECK(enumerate_decompositions(*make(Flavor::GL, 1, 3)).size() == 1);
  CHECK(enumerate_decompositions(*make(Flavor::GL, 2, 2)).size() == 4);
  CHECK(enumerate_decompositions(*make(Flavor::GL, 3, 2)).size() == 57);
  for (auto [n, q] : {std::pair{2, 2}, {2, 3}, {3, 2}, {2, 5}, {3, 3}}) {
    const auto ctx = make(Flavor::GL, n, q);
    const auto& f = ctx->field();
    const auto& subs = ctx->subspaces();
    std::uint64_t full = 1;
    for (int i = 0; i < n; ++i) full *= static_cast<std::uint64_t>(q);
    // Sets of at most n nonzero subspaces whose dimensions sum to n and whose
    // bases together span V.
    std::set<std::vector<SubId>> expected;
    std::vector<SubId> cur;
    std::function<void(SubId, int)> rec = [&](SubId from, int dim) {
      if (dim == n) {
        std::vector<Vec> rows;
        for (SubId w : cur)
          for (const auto& v : subs[w].basis()) rows.push_back(v);
        if (span_set(f, n, rows).size() == full) expected.insert(cur);
        return;
      }
      for (SubId w = from; w < subs.size(); ++w) {
        if (subs[w].dim() == 0 || dim + subs[w].dim() > n) continue;
        cur.push_back(w);
        rec(w + 1, dim + subs[w].dim());
        cur.pop_back();
      }
    };
    rec(0, 0);
    std::set<std::vector<SubId>> got;
    for (const auto& d : enumerate_decompositions(*ctx)) got.insert(d.summands);
    CAPTURE(n);
    CAPTURE(q);
    CHECK(got == expected);
    CHECK(got.size() == enumerate_decompositions(*ctx).size());
  }
}

TEST_CASE("GL(2,2) census") {
  const auto ctx = make(Flavor::GL, 2, 2);
  const Census c = census_constructive(*ctx, 6);
  CHECK(counts(c) == std::map<std::size_t, std::size_t>{{1, 1}, {3, 3}});
  CHECK(c.rows[0].entries[0].h == glc::group::whole_group(*ctx));
  CHECK(c.rows[1].flag() == 3);
  CHECK(c.rows[1].boolean() == 0);
  for (const auto& e : c.rows[1].entries) CHECK(e.y_factors == std::vector<BigInt>{3});
  CHECK(census_equal(c, census_bruteforce(*ctx, 6)));
  for (const auto& r : bound_check(c)) CHECK(r.pass());
  CHECK(census_constructive(*ctx, 0).rows.empty());
}

TEST_CASE("constructive census equals the brute-force census") {
  for (auto [flavor, n, q] : {std::tuple{Flavor::GL, 2, 2}, {Flavor::GL, 2, 3}, {Flavor::GL, 3, 2},
                              {Flavor::PGL, 2, 3}, {Flavor::PGL, 2, 2}, {Flavor::GL, 2, 4}}) {
    const auto ctx = make(flavor, n, q);
    const std::size_t m_max = ctx->order();
    const Census a = census_constructive(*ctx, m_max);
    const Census b = census_bruteforce(*ctx, m_max);
    CAPTURE(ctx->name());
    CHECK(census_equal(a, b));
    CHECK(counts(a) == counts(b));
    for (const auto& r : bound_check(a)) CHECK(r.pass());
    for (const auto& row : b.rows)
      for (const auto& e : row.entries) {
        CHECK(e.index == row.m);
        if (flavor == Flavor::GL)
          for (auto s : ctx->scalars()) CHECK(e.h.contains(s));
      }
  }
}

TEST_CASE("census examples") {
  const auto pgl = make(Flavor::PGL, 2, 3);
  const Census p = census_constructive(*pgl, 1);
  REQUIRE(p.rows.size() == 1);
  CHECK(p.rows[0].m == 1);
  CHECK(p.rows[0].c() == 1);
  CHECK(p.rows[0].entries[0].cls.profile == std::vector<int>{1});

  const auto gl = make(Flavor::GL, 2, 3);
  const auto& f = gl->field();
  std::vector<glc::group::ElemId> diag;
  for (glc::gf::Fe a = 1; a < 3; ++a)
    for (glc::gf::Fe b = 1; b < 3; ++b) diag.push_back(gl->id_of(Matrix(f, 2, {a, 0, 0, b})));
  const Subgroup d = glc::group::subgroup_from_members(*gl, [&] {
    glc::poset::Bits bits(gl->order());
    for (auto g : diag) bits.set(g);
    return bits;
  }());
  const Census c = census_constructive(*gl, 12);
  bool found = false;
  for (const auto& row : c.rows)
    for (const auto& e : row.entries)
      if (e.h == d) {
        found = true;
        CHECK(row.m == 12);
        CHECK(e.cls.is_boolean());
        CHECK(e.cls.profile == std::vector<int>{1, 1});
      }
  CHECK(found);
}

TEST_CASE("constructive census runs where the subgroup lattice is out of reach") {
  const auto ctx = make(Flavor::GL, 3, 3);
  CHECK_THROWS_AS(census_bruteforce(*ctx, 13), Error);
  const Census c = census_constructive(*ctx, 13);
  // G, then the stabilizers of the 13 lines and of the 13 planes.
  CHECK(counts(c) == std::map<std::size_t, std::size_t>{{1, 1}, {13, 26}});
  for (const auto& r : bound_check(c)) CHECK(r.pass());
}

TEST_CASE("cyclic proportion") {
  const auto check = [](int n, int q) {
    const auto ctx = make(Flavor::GL, n, q);
    std::size_t cyclic = 0;
    for (glc::group::ElemId g = 0; g < ctx->order(); ++g) cyclic += cyclic_by_definition(ctx->element(g));
    const auto r = cyclic_proportion(*ctx);
    CHECK(r.cyclic == cyclic);
    CHECK(r.total == ctx->order());
    CHECK(r.pass);
    return r;
  };
  const auto a = check(2, 2);
  CHECK(a.gap == Rational(1, 6));
  CHECK(a.equality);
  const auto b = check(2, 3);
  CHECK(b.gap == Rational(1, 24));
  CHECK(b.equality);
  const auto c = check(3, 2);
  CHECK(c.gap <= Rational(1, 6));
  check(2, 4);
  check(2, 5);
  CHECK_THROWS_AS(cyclic_proportion(*make(Flavor::PGL, 2, 3)), Error);
  CHECK_THROWS_AS(cyclic_proportion(*make(Flavor::GL, 1, 3)), Error);
}

TEST_CASE("divisor lattices of cyclic elements") {
  const auto ctx = make(Flavor::GL, 2, 2);
  const auto& f2 = ctx->field();
  const std::vector<glc::gf::Fe> lower = {1, 1};
  const auto r = divisor_lattice_iso_check(*ctx, ctx->id_of(Matrix::companion(f2, lower)));
  CHECK(r.profile == std::vector<int>{1});
  CHECK(r.invariant_count == 2);
  CHECK(r.pass);
  try {
    divisor_lattice_iso_check(*ctx, ctx->identity());
    FAIL("expected NotCyclic");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotCyclic);
  }

  // (t+1)(t^2+t+1) = t^3 + 1 over F_2.
  const auto g32 = make(Flavor::GL, 3, 2);
  const std::vector<glc::gf::Fe> lower3 = {1, 0, 0};
  const auto r3 = divisor_lattice_iso_check(*g32, g32->id_of(Matrix::companion(g32->field(), lower3)));
  CHECK(r3.profile == std::vector<int>{1, 1});
  CHECK(r3.invariant_count == 4);
  CHECK(r3.pass);

  for (auto [n, q] : {std::pair{2, 2}, {2, 3}, {3, 2}}) {
    const auto c = make(Flavor::GL, n, q);
    const auto records = sweep_divisor_lattices(*c);
    std::size_t cyclic = 0;
    for (glc::group::ElemId g = 0; g < c->order(); ++g) cyclic += cyclic_by_definition(c->element(g));
    CHECK(records.size() == cyclic);
    CHECK(glc::all_pass(records));
  }
  CHECK_THROWS_AS(divisor_lattice_iso_check(*make(Flavor::PGL, 2, 3), 0), Error);
}

TEST_CASE("z census") {
  const auto ctx = make(Flavor::GL, 2, 2);
  const auto z = z_census(*ctx, 6);
  CHECK(z.counts == std::map<std::size_t, std::size_t>{{1, 1}, {3, 3}});
  for (auto [n, q] : {std::pair{2, 2}, {2, 3}, {3, 2}, {2, 4}}) {
    const auto c = make(Flavor::GL, n, q);
    const auto zc = z_census(*c, c->order());
    const auto records = z_within_census(zc, census_bruteforce(*c, c->order()));
    CHECK(records.size() == zc.counts.size());
    CHECK(glc::all_pass(records));
  }
  CHECK_THROWS_AS(z_census(*make(Flavor::PGL, 2, 3), 6), Error);
}

TEST_CASE("cyclic proportion sweep") {
  const auto records = sweep_cyclic_proportion(*make(Flavor::GL, 2, 2));
  REQUIRE(records.size() == 1);
  CHECK(records[0].lhs == "1/6");
  CHECK(records[0].rhs == "1/6");
  CHECK(records[0].pass);
}
