#include "glc/group.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "glc/error.hpp"

namespace glc::group {

using gf::Fe;

namespace {

constexpr ElemId kUnset = static_cast<ElemId>(-1);
constexpr std::size_t kMaxActionTable = std::size_t{1} << 24;

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

std::size_t element_order(const Context& ctx, ElemId g) {
  std::size_t k = 1;
  for (ElemId x = g; x != ctx.identity(); x = ctx.mul(x, g)) ++k;
  return k;
}

bool is_prime_power(std::size_t m) {
  if (m < 2) return false;
  std::size_t p = 2;
  while (m % p != 0) ++p;
  while (m % p == 0) m /= p;
  return m == 1;
}

poset::Bits to_bits(std::size_t n, const std::vector<ElemId>& ids) {
  poset::Bits b(n);
  for (ElemId i : ids) b.set(i);
  return b;
}

std::vector<ElemId> from_bits(const poset::Bits& b) {
  std::vector<ElemId> out;
  out.reserve(b.count());
  for (auto i = b.find_first(); i != poset::Bits::npos; i = b.find_next(i)) out.push_back(static_cast<ElemId>(i));
  return out;
}

/// Closure of `start` (already a subset containing the identity) under right
/// multiplication by the generators.
poset::Bits close_under(const Context& ctx, poset::Bits start, const std::vector<ElemId>& gens) {
  std::vector<ElemId> frontier = from_bits(start);
  while (!frontier.empty()) {
    std::vector<ElemId> next;
    for (ElemId x : frontier)
      for (ElemId g : gens) {
        const ElemId y = ctx.mul(x, g);
        if (!start.test(y)) {
          start.set(y);
          next.push_back(y);
        }
      }
    frontier = std::move(next);
  }
  return start;
}

void check_same_context(const Subgroup& a, const Subgroup& b) {
  if (&a.context() != &b.context()) throw Error(ErrorCode::InvalidArgs, "subgroups from different contexts");
}

}  // namespace

std::string to_string(Flavor f) { return f == Flavor::GL ? "GL" : "PGL"; }

BigInt gl_order(int n, int q) {
  int p = 0;
  int k = 0;
  if (!gf::prime_power(q, p, k)) throw Error(ErrorCode::NotAPrimePower, "q = " + std::to_string(q));
  if (n < 1) throw Error(ErrorCode::InvalidArgs, "n must be positive");
  BigInt qq = q;
  BigInt factorial = 1;  // [n]_q!
  BigInt bracket = 0;    // [i]_q = 1 + q + ... + q^(i-1)
  BigInt qpow = 1;
  for (int i = 1; i <= n; ++i) {
    bracket += qpow;
    qpow *= qq;
    factorial *= bracket;
  }
  return factorial * boost::multiprecision::pow(qq - 1, n) * boost::multiprecision::pow(qq, n * (n - 1) / 2);
}

// ---- Context ---------------------------------------------------------------

Context::Context(Flavor flavor, int n, const linalg::Field& field, Caps caps)
    : flavor_(flavor), n_(n), field_(&field), caps_(caps) {}

Context::~Context() = default;

std::string Context::name() const {
  return to_string(flavor_) + "(" + std::to_string(n_) + "," + std::to_string(field_->q()) + ")";
}

std::uint64_t Context::key(const Matrix& m) const {
  std::uint64_t k = 0;
  for (Fe e : m.entries()) k = k * static_cast<std::uint64_t>(field_->q()) + e;
  return k;
}

std::shared_ptr<const Context> Context::build(Flavor flavor, int n, int q, Caps caps) {
  const auto& field = gf::field_new(q);
  BigInt expected = gl_order(n, q);
  if (flavor == Flavor::PGL) expected /= (q - 1);
  if (expected > caps.max_elements)
    throw Error(ErrorCode::CapExceeded, to_string(flavor) + "(" + std::to_string(n) + "," + std::to_string(q) +
                                            ") has " + expected.str() + " elements, above the element cap");
  std::shared_ptr<Context> ctx(new Context(flavor, n, field, caps));

  // Rows are chosen one at a time outside the span of the earlier rows; with
  // candidates visited in lexicographic order the output is already sorted.
  const std::uint64_t nvec = ipow(static_cast<std::uint64_t>(q), n);
  std::vector<linalg::Vec> vectors(nvec, linalg::Vec(static_cast<std::size_t>(n)));
  for (std::uint64_t code = 0; code < nvec; ++code) {
    std::uint64_t c = code;
    for (int i = n - 1; i >= 0; --i) {
      vectors[code][i] = static_cast<Fe>(c % static_cast<std::uint64_t>(q));
      c /= static_cast<std::uint64_t>(q);
    }
  }
  auto code_of = [&](const linalg::Vec& v) {
    std::uint64_t c = 0;
    for (Fe e : v) c = c * static_cast<std::uint64_t>(q) + e;
    return c;
  };

  std::vector<Fe> entries(static_cast<std::size_t>(n * n));
  std::vector<linalg::Vec> chosen;
  auto rec = [&](auto&& self, int row) -> void {
    if (row == n) {
      ctx->elements_.emplace_back(field, n, entries);
      return;
    }
    std::vector<char> in_span(nvec, 0);
    {
      std::vector<linalg::Vec> span = {linalg::Vec(static_cast<std::size_t>(n), 0)};
      for (const auto& r : chosen) {
        std::vector<linalg::Vec> next;
        next.reserve(span.size() * static_cast<std::size_t>(q));
        for (const auto& v : span)
          for (int c = 0; c < q; ++c) {
            linalg::Vec w = v;
            for (int j = 0; j < n; ++j) w[j] = field.add(w[j], field.mul(static_cast<Fe>(c), r[j]));
            next.push_back(std::move(w));
          }
        span = std::move(next);
      }
      for (const auto& v : span) in_span[code_of(v)] = 1;
    }
    for (std::uint64_t code = 0; code < nvec; ++code) {
      if (in_span[code]) continue;
      const auto& v = vectors[code];
      if (flavor == Flavor::PGL && row == 0) {
        const auto first = std::find_if(v.begin(), v.end(), [](Fe e) { return e != 0; });
        if (*first != 1) continue;
      }
      std::copy(v.begin(), v.end(), entries.begin() + row * n);
      chosen.push_back(v);
      self(self, row + 1);
      chosen.pop_back();
    }
  };
  rec(rec, 0);

  if (ctx->elements_.size() != expected)
    throw Error(ErrorCode::InvalidArgs, "element enumeration disagrees with the order formula");
  ctx->keys_.reserve(ctx->elements_.size());
  for (const auto& m : ctx->elements_) ctx->keys_.push_back(ctx->key(m));
  if (!std::is_sorted(ctx->keys_.begin(), ctx->keys_.end()))
    throw Error(ErrorCode::InvalidArgs, "element enumeration out of order");

  ctx->identity_ = ctx->id_of(Matrix::identity(field, n));
  ctx->inverse_.resize(ctx->elements_.size());
  for (std::size_t g = 0; g < ctx->elements_.size(); ++g) ctx->inverse_[g] = ctx->id_of(ctx->elements_[g].inverse());
  if (flavor == Flavor::GL) {
    for (int c = 1; c < q; ++c) ctx->scalars_.push_back(ctx->id_of(Matrix::scalar(field, n, static_cast<Fe>(c))));
    std::sort(ctx->scalars_.begin(), ctx->scalars_.end());
  } else {
    ctx->scalars_.push_back(ctx->identity_);
  }
  if (ctx->elements_.size() <= caps.max_group_order)
    ctx->mul_table_.assign(ctx->elements_.size() * ctx->elements_.size(), kUnset);
  return ctx;
}

Matrix Context::normalize(const Matrix& m) const {
  if (flavor_ == Flavor::GL) return m;
  for (Fe e : m.entries())
    if (e != 0) return e == 1 ? m : m.scaled(field_->inv(e));
  return m;
}

std::optional<ElemId> Context::find(const Matrix& m) const {
  if (&m.field() != field_ || m.n() != n_) return std::nullopt;
  const auto k = key(normalize(m));
  const auto it = std::lower_bound(keys_.begin(), keys_.end(), k);
  if (it == keys_.end() || *it != k) return std::nullopt;
  return static_cast<ElemId>(it - keys_.begin());
}

ElemId Context::id_of(const Matrix& m) const {
  auto id = find(m);
  if (!id) throw Error(ErrorCode::InvalidElement, "matrix is not an element of " + name());
  return *id;
}

ElemId Context::mul(ElemId a, ElemId b) const {
  if (!mul_table_.empty()) {
    ElemId& slot = mul_table_[static_cast<std::size_t>(a) * elements_.size() + b];
    if (slot == kUnset) slot = *find(elements_[a] * elements_[b]);
    return slot;
  }
  return *find(elements_[a] * elements_[b]);
}

const std::vector<Subspace>& Context::subspaces() const {
  if (!subspaces_) {
    subspaces_ = linalg::all_subspaces(n_, *field_, caps_.max_subspaces);
    const std::size_t cells = elements_.size() * subspaces_->size();
    if (cells <= kMaxActionTable) action_.assign(cells, static_cast<SubId>(-1));
  }
  return *subspaces_;
}

SubId Context::subspace_id(const Subspace& w) const {
  const auto& subs = subspaces();
  const auto it = std::lower_bound(subs.begin(), subs.end(), w);
  if (it == subs.end() || !(*it == w)) throw Error(ErrorCode::DimensionMismatch, "subspace not in the ambient space");
  return static_cast<SubId>(it - subs.begin());
}

SubId Context::act(ElemId g, SubId w) const {
  const auto& subs = subspaces();
  if (action_.empty()) return subspace_id(linalg::image_unchecked(subs[w], elements_[g]));
  SubId& slot = action_[static_cast<std::size_t>(g) * subs.size() + w];
  if (slot == static_cast<SubId>(-1)) slot = subspace_id(linalg::image_unchecked(subs[w], elements_[g]));
  return slot;
}

void Context::require_lattice_scale() const {
  if (elements_.size() > caps_.max_group_order)
    throw Error(ErrorCode::CapExceeded, name() + " has " + std::to_string(elements_.size()) +
                                            " elements, above the subgroup-lattice cap of " +
                                            std::to_string(caps_.max_group_order));
}

const SubgroupLattice& Context::lattice() const {
  if (lattice_) return *lattice_;
  require_lattice_scale();
  const std::size_t n = elements_.size();

  // Every subgroup is generated by elements of prime-power order, so joining
  // with the cyclic subgroups of prime-power order reaches all of them.
  std::vector<ElemId> seeds;
  {
    std::set<poset::Bits> seen;
    for (ElemId g = 0; g < n; ++g) {
      if (!is_prime_power(element_order(*this, g))) continue;
      poset::Bits b(n);
      b.set(identity_);
      if (seen.insert(close_under(*this, b, {g})).second) seeds.push_back(g);
    }
  }

  std::vector<Subgroup> found;
  std::map<poset::Bits, std::size_t> index;
  auto add = [&](poset::Bits bits, std::vector<ElemId> gens) {
    if (index.count(bits)) return;
    if (found.size() >= caps_.max_subgroup_count)
      throw Error(ErrorCode::CapExceeded, name() + " has more than " + std::to_string(caps_.max_subgroup_count) +
                                              " subgroups");
    index.emplace(bits, found.size());
    found.emplace_back(*this, from_bits(bits), std::move(gens));
  };
  {
    poset::Bits b(n);
    b.set(identity_);
    add(b, {});
  }
  for (std::size_t i = 0; i < found.size(); ++i)
    for (ElemId s : seeds) {
      if (found[i].contains(s)) continue;
      std::vector<ElemId> gens = found[i].generators();
      gens.push_back(s);
      poset::Bits joined = close_under(*this, found[i].bits(), gens);
      add(std::move(joined), std::move(gens));
    }

  std::sort(found.begin(), found.end());
  std::vector<poset::Bits> up(found.size(), poset::Bits(found.size()));
  for (std::size_t i = 0; i < found.size(); ++i)
    for (std::size_t j = i; j < found.size(); ++j)
      if (found[j].order() % found[i].order() == 0 && found[i].is_subgroup_of(found[j])) up[i].set(j);
  auto lat = std::make_unique<SubgroupLattice>(SubgroupLattice{std::move(found), poset::FinitePoset(std::move(up))});
  lattice_ = std::move(lat);
  return *lattice_;
}

// ---- Subgroups --------------------------------------------------------------

Subgroup::Subgroup(const Context& ctx, std::vector<ElemId> members, std::vector<ElemId> generators)
    : ctx_(&ctx), members_(std::move(members)), generators_(std::move(generators)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  for (ElemId g : members_)
    if (g >= ctx.order()) throw Error(ErrorCode::InvalidElement, "element id out of range");
  bits_ = to_bits(ctx.order(), members_);
}

bool Subgroup::operator<(const Subgroup& o) const {
  if (members_.size() != o.members_.size()) return members_.size() < o.members_.size();
  return members_ < o.members_;
}

std::size_t SubgroupLattice::index_of(const Subgroup& h) const {
  const auto it = std::lower_bound(subgroups.begin(), subgroups.end(), h);
  if (it == subgroups.end() || !(*it == h)) throw Error(ErrorCode::NotFound, "subgroup not in the lattice");
  return static_cast<std::size_t>(it - subgroups.begin());
}

Subgroup generate_subgroup(const Context& ctx, const std::vector<ElemId>& generators) {
  for (ElemId g : generators)
    if (g >= ctx.order()) throw Error(ErrorCode::InvalidElement, "generator id out of range");
  poset::Bits b(ctx.order());
  b.set(ctx.identity());
  return Subgroup(ctx, from_bits(close_under(ctx, b, generators)), generators);
}

Subgroup trivial_subgroup(const Context& ctx) { return Subgroup(ctx, {ctx.identity()}); }

Subgroup whole_group(const Context& ctx) {
  std::vector<ElemId> all(ctx.order());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<ElemId>(i);
  return Subgroup(ctx, std::move(all));
}

Subgroup subgroup_from_members(const Context& ctx, poset::Bits members) {
  if (members.size() != ctx.order() || !members.test(ctx.identity()))
    throw Error(ErrorCode::InvalidArgs, "member set must contain the identity");
  auto ids = from_bits(members);
  for (ElemId a : ids) {
    if (!members.test(ctx.inv(a))) throw Error(ErrorCode::InvalidArgs, "member set not closed under inverses");
    for (ElemId b : ids)
      if (!members.test(ctx.mul(a, b))) throw Error(ErrorCode::InvalidArgs, "member set not closed under products");
  }
  return Subgroup(ctx, std::move(ids));
}

Subgroup intersect(const Subgroup& a, const Subgroup& b) {
  check_same_context(a, b);
  return Subgroup(a.context(), from_bits(a.bits() & b.bits()));
}

Subgroup join(const Subgroup& a, const Subgroup& b) {
  check_same_context(a, b);
  std::vector<ElemId> gens = a.generators().empty() ? a.members() : a.generators();
  const auto& more = b.generators().empty() ? b.members() : b.generators();
  gens.insert(gens.end(), more.begin(), more.end());
  return Subgroup(a.context(), from_bits(close_under(a.context(), a.bits() | b.bits(), gens)), gens);
}

const std::vector<Subgroup>& all_subgroups(const Context& ctx) { return ctx.lattice().subgroups; }
const poset::FinitePoset& subgroup_lattice(const Context& ctx) { return ctx.lattice().order; }

Subgroup stab_family_ids(const Context& ctx, const std::vector<SubId>& ws) {
  std::vector<ElemId> members;
  for (ElemId g = 0; g < ctx.order(); ++g) {
    bool fixes = true;
    for (SubId w : ws)
      if (ctx.act(g, w) != w) {
        fixes = false;
        break;
      }
    if (fixes) members.push_back(g);
  }
  return Subgroup(ctx, std::move(members));
}

Subgroup stab_family(const Context& ctx, const std::vector<Subspace>& ws) {
  std::vector<SubId> ids;
  for (const auto& w : ws) {
    if (w.n() != ctx.n() || &w.field() != &ctx.field())
      throw Error(ErrorCode::DimensionMismatch, "subspace does not live in the natural module");
    ids.push_back(ctx.subspace_id(w));
  }
  return stab_family_ids(ctx, ids);
}

Subgroup stab_subspace(const Context& ctx, const Subspace& w) { return stab_family(ctx, {w}); }

std::vector<SubId> invariant_subspace_ids(const Subgroup& h) {
  const Context& ctx = h.context();
  const auto& gens = h.generators().empty() ? h.members() : h.generators();
  std::vector<SubId> out;
  const auto count = static_cast<SubId>(ctx.subspaces().size());
  for (SubId w = 0; w < count; ++w) {
    bool invariant = true;
    for (ElemId g : gens)
      if (ctx.act(g, w) != w) {
        invariant = false;
        break;
      }
    if (invariant) out.push_back(w);
  }
  return out;
}

bool is_irreducible(const Subgroup& h) { return invariant_subspace_ids(h).size() == 2; }

std::size_t index(const Subgroup& h) {
  const std::size_t n = h.context().order();
  if (n % h.order() != 0) throw Error(ErrorCode::InvalidArgs, "subgroup order does not divide the group order");
  return n / h.order();
}

std::vector<Subgroup> conjugates(const Subgroup& h) {
  const Context& ctx = h.context();
  std::set<poset::Bits> seen;
  for (ElemId g = 0; g < ctx.order(); ++g) {
    poset::Bits b(ctx.order());
    const ElemId gi = ctx.inv(g);
    for (ElemId x : h.members()) b.set(ctx.mul(ctx.mul(gi, x), g));
    seen.insert(std::move(b));
  }
  std::vector<Subgroup> out;
  for (const auto& b : seen) out.emplace_back(ctx, from_bits(b));
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

void check_pair(const Context& gl, const Context& pgl) {
  if (gl.flavor() != Flavor::GL || pgl.flavor() != Flavor::PGL || gl.n() != pgl.n() ||
      &gl.field() != &pgl.field())
    throw Error(ErrorCode::WrongFlavor, "expected GL and PGL contexts over the same (n, q)");
}

}  // namespace

Subgroup pgl_preimage(const Context& gl, const Context& pgl, const Subgroup& y) {
  check_pair(gl, pgl);
  if (&y.context() != &pgl) throw Error(ErrorCode::WrongFlavor, "subgroup does not belong to the PGL context");
  std::vector<ElemId> members;
  for (ElemId e : y.members())
    for (int c = 1; c < gl.field().q(); ++c) members.push_back(gl.id_of(pgl.element(e).scaled(static_cast<Fe>(c))));
  std::vector<ElemId> gens;
  for (ElemId e : y.generators()) gens.push_back(gl.id_of(pgl.element(e)));
  return Subgroup(gl, std::move(members), std::move(gens));
}

Subgroup pgl_image(const Context& gl, const Context& pgl, const Subgroup& h) {
  check_pair(gl, pgl);
  if (&h.context() != &gl) throw Error(ErrorCode::WrongFlavor, "subgroup does not belong to the GL context");
  for (ElemId s : gl.scalars())
    if (!h.contains(s)) throw Error(ErrorCode::NotScalarSaturated, "subgroup does not contain the scalars");
  std::vector<ElemId> members;
  for (ElemId e : h.members()) members.push_back(pgl.id_of(gl.element(e)));
  std::vector<ElemId> gens;
  for (ElemId e : h.generators()) gens.push_back(pgl.id_of(gl.element(e)));
  return Subgroup(pgl, std::move(members), std::move(gens));
}

}  // namespace glc::group
