#include "cli.hpp"

#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "glc/closure.hpp"
#include "glc/counting.hpp"
#include "glc/error.hpp"
#include "glc/group.hpp"

namespace glc::cli {

namespace {

using json = nlohmann::ordered_json;
using group::ContextPtr;
using group::Flavor;
using group::Subgroup;

struct Config {
  std::string flavor = "gl";
  int n = 2;
  int q = 2;
  bool context_given = false;
  std::optional<std::size_t> m_max;
  std::string gens;
  std::string method = "constructive";
  std::string suite = "all";
  std::string format = "json";
  std::string out;
  std::uint64_t max_group_order = group::Caps{}.max_group_order;
  std::size_t psi_cap = closure::kDefaultPsiCap;
};

/// One command's result in every output format.
struct Report {
  json data;
  std::string csv;
  std::string text;
  int status = kOk;
};

Flavor flavor_of(const std::string& s) { return s == "pgl" ? Flavor::PGL : Flavor::GL; }

ContextPtr build(const Config& c, Flavor f, int n, int q) {
  if (n < 1) throw Error(ErrorCode::InvalidArgs, "--n must be at least 1");
  group::Caps caps;
  caps.max_group_order = c.max_group_order;
  return group::Context::build(f, n, q, caps);
}

ContextPtr build(const Config& c) { return build(c, flavor_of(c.flavor), c.n, c.q); }

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

/// Generators separated by '|'; an empty list gives the trivial subgroup.
Subgroup parse_gens(const group::Context& ctx, const std::string& text) {
  std::vector<group::ElemId> ids;
  if (!trim(text).empty()) {
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, '|'))
      ids.push_back(ctx.id_of(linalg::parse_matrix(ctx.field(), trim(part))));
  }
  return group::generate_subgroup(ctx, ids);
}

json profile_json(const poset::LatticeClass& c) { return c.profile; }

std::string profile_text(const std::vector<int>& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? " " : "") + std::to_string(p[i]);
  return s;
}

std::string rational_text(const counting::Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::string big_text(const group::BigInt& b) { return b.str(); }

json context_json(const group::Context& ctx) {
  return {{"flavor", group::to_string(ctx.flavor())}, {"n", ctx.n()}, {"q", ctx.field().q()}, {"order", ctx.order()}};
}

// ---- mu ------------------------------------------------------------------------

Report cmd_mu(const Config& c) {
  const auto ctx = build(c);
  const Subgroup h = parse_gens(*ctx, c.gens);
  const auto& lat = ctx->lattice();
  const auto d = closure::mu_via_irreducibles(h);
  const bool closed = closure::is_closed(h);

  Report r;
  r.data = context_json(*ctx);
  r.data["h_order"] = h.order();
  r.data["h_index"] = group::index(h);
  r.data["mu"] = d.direct;
  r.data["closed"] = closed;
  r.data["irreducible_sum"] = d.total;
  json terms = json::array();
  r.csv = "k,order,index,mu_k_g,mu_ideal\n";
  std::ostringstream text;
  text << ctx->name() << " |H|=" << h.order() << " mu(H,G)=" << d.direct << " closed=" << (closed ? "true" : "false")
       << "\n";
  for (const auto& t : d.terms) {
    const std::size_t k = lat.index_of(t.k);
    terms.push_back({{"k", k}, {"order", t.k.order()}, {"index", group::index(t.k)}, {"mu_k_g", t.mu_k_g},
                     {"mu_ideal", t.mu_ideal}});
    r.csv += std::to_string(k) + "," + std::to_string(t.k.order()) + "," + std::to_string(group::index(t.k)) + "," +
             std::to_string(t.mu_k_g) + "," + std::to_string(t.mu_ideal) + "\n";
    text << "  K#" << k << " |K|=" << t.k.order() << " mu(K,G)=" << t.mu_k_g << " mu_ideal=" << t.mu_ideal << "\n";
  }
  text << "sum over irreducible overgroups: " << d.total << "\n";
  r.data["terms"] = std::move(terms);
  r.text = text.str();
  return r;
}

// ---- closure -------------------------------------------------------------------

Report cmd_closure(const Config& c) {
  const auto ctx = build(c);
  const Subgroup h = parse_gens(*ctx, c.gens);
  const Subgroup cl = closure::cl(h);
  const auto s = closure::invariant_lattice(h);
  const auto cls = poset::classify(s.order);
  const auto& subs = ctx->subspaces();

  Report r;
  r.data = context_json(*ctx);
  r.data["h_order"] = h.order();
  r.data["h_index"] = group::index(h);
  r.data["cl_order"] = cl.order();
  r.data["cl_index"] = group::index(cl);
  r.data["closed"] = cl == h;
  r.data["invariant_subspaces"] = s.subspaces.size();
  json ji = json::array();
  std::string ji_text;
  for (auto i = s.ji.find_first(); i != poset::Bits::npos; i = s.ji.find_next(i)) {
    const std::string w = linalg::format_subspace(subs[s.subspaces[i]]);
    ji.push_back(w);
    ji_text += (ji_text.empty() ? "" : " | ") + w;
  }
  r.data["join_irreducibles"] = ji;
  r.data["class"] = poset::to_string(cls.kind);
  r.data["profile"] = profile_json(cls);

  r.csv = "field,value\n";
  for (const auto& [k, v] : r.data.items())
    if (!v.is_array()) r.csv += k + "," + (v.is_string() ? v.get<std::string>() : v.dump()) + "\n";
  r.csv += "profile," + profile_text(cls.profile) + "\n";

  std::ostringstream text;
  text << ctx->name() << " |H|=" << h.order() << " |cl(H)|=" << cl.order() << " index " << group::index(cl)
       << (cl == h ? " closed" : " not closed") << "\n"
       << "invariant subspaces: " << s.subspaces.size() << "\n"
       << "join-irreducibles: " << ji_text << "\n"
       << "class: " << poset::to_string(cls.kind) << " (" << profile_text(cls.profile) << ")\n";
  r.text = text.str();
  return r;
}

// ---- census --------------------------------------------------------------------

json census_json(const counting::Census& census, const std::vector<counting::BoundRow>& bounds) {
  json rows = json::array();
  for (const auto& row : census.rows) {
    json subgroups = json::array();
    for (const auto& e : row.entries) {
      json s = {{"order", e.h.order()},
                {"index", e.index},
                {"class", poset::to_string(e.cls.kind)},
                {"profile", profile_json(e.cls)}};
      if (!e.y_factors.empty()) {
        json y = json::array();
        for (const auto& f : e.y_factors) y.push_back(big_text(f));
        s["y_factors"] = y;
      }
      subgroups.push_back(std::move(s));
    }
    rows.push_back({{"m", row.m},
                    {"c", row.c()},
                    {"boolean", row.boolean()},
                    {"flag", row.flag()},
                    {"subgroups", std::move(subgroups)}});
  }
  json b = json::array();
  for (const auto& x : bounds)
    b.push_back({{"m", x.m}, {"boolean_le_m4", x.pass_b}, {"flag_le_m4", x.pass_f}, {"c_le_m12", x.pass_x}});
  return {{"flavor", group::to_string(census.flavor)},
          {"n", census.n},
          {"q", census.q},
          {"m_max", census.m_max},
          {"method", counting::to_string(census.method)},
          {"rows", std::move(rows)},
          {"bounds", std::move(b)}};
}

std::string census_csv(const counting::Census& census) {
  std::string out = "m,c,boolean,flag,order,index,class,profile\n";
  for (const auto& row : census.rows)
    for (const auto& e : row.entries)
      out += std::to_string(row.m) + "," + std::to_string(row.c()) + "," + std::to_string(row.boolean()) + "," +
             std::to_string(row.flag()) + "," + std::to_string(e.h.order()) + "," + std::to_string(e.index) + "," +
             poset::to_string(e.cls.kind) + "," + profile_text(e.cls.profile) + "\n";
  return out;
}

std::string census_text(const counting::Census& census, const std::vector<counting::BoundRow>& bounds) {
  std::ostringstream text;
  text << census.context << " census (" << counting::to_string(census.method) << "), m <= " << census.m_max << "\n";
  for (std::size_t i = 0; i < census.rows.size(); ++i) {
    const auto& row = census.rows[i];
    text << "m=" << row.m << " c=" << row.c() << " boolean=" << row.boolean() << " flag=" << row.flag()
         << (bounds[i].pass() ? " bounds ok" : " BOUND FAILED") << "\n";
  }
  return text.str();
}

Report cmd_census(const Config& c) {
  const auto ctx = build(c);
  const std::size_t m_max = c.m_max.value_or(ctx->order());
  Report r;
  auto bounds_pass = [](const std::vector<counting::BoundRow>& b) {
    for (const auto& x : b)
      if (!x.pass()) return false;
    return true;
  };

  std::optional<counting::Census> cons, brute;
  if (c.method != "bruteforce") cons = counting::census_constructive(*ctx, m_max);
  if (c.method != "constructive") brute = counting::census_bruteforce(*ctx, m_max);
  const counting::Census& primary = cons ? *cons : *brute;
  const auto bounds = counting::bound_check(primary);
  bool ok = bounds_pass(bounds);

  if (cons && brute) {
    const bool equal = counting::census_equal(*cons, *brute);
    const auto brute_bounds = counting::bound_check(*brute);
    ok = ok && equal && bounds_pass(brute_bounds);
    r.data = {{"constructive", census_json(*cons, bounds)},
              {"bruteforce", census_json(*brute, brute_bounds)},
              {"equal", equal}};
    r.text = census_text(*cons, bounds) + census_text(*brute, brute_bounds) +
             (equal ? "constructive = bruteforce\n" : "constructive != bruteforce\n");
  } else {
    r.data = census_json(primary, bounds);
    r.text = census_text(primary, bounds);
  }
  r.data["pass"] = ok;
  r.csv = census_csv(primary);
  r.status = ok ? kOk : kCheckFailed;
  return r;
}

// ---- verify --------------------------------------------------------------------

struct Suite {
  const char* name;
  bool gl_only;
  std::function<std::vector<VerifyRecord>(const group::Context&, const Config&)> run;
};

const std::vector<Suite>& suites() {
  static const std::vector<Suite> all = {
      {"lemma22", false, [](const group::Context& g, const Config&) { return closure::sweep_ideal_decomposition(g); }},
      {"thm34", false, [](const group::Context& g, const Config&) { return closure::sweep_mu_via_irreducibles(g); }},
      {"thm35", false,
       [](const group::Context& g, const Config& c) { return closure::sweep_psi_identity(g, c.psi_cap); }},
      {"prop11", false, [](const group::Context& g, const Config&) { return closure::sweep_nonclosed_vanishing(g); }},
      {"prop36", false,
       [](const group::Context& g, const Config&) { return closure::sweep_mu_nonzero_decomposition(g); }},
      {"fact43", true, [](const group::Context& g, const Config&) { return counting::sweep_divisor_lattices(g); }},
      {"thm48", true, [](const group::Context& g, const Config&) { return counting::sweep_cyclic_proportion(g); }},
  };
  return all;
}

std::vector<ContextPtr> verify_contexts(const Config& c) {
  if (c.context_given) return {build(c)};
  std::vector<ContextPtr> out;
  for (auto [n, q] : {std::pair{2, 2}, {2, 3}, {3, 2}}) {
    out.push_back(build(c, Flavor::GL, n, q));
    out.push_back(build(c, Flavor::PGL, n, q));
  }
  out.push_back(build(c, Flavor::GL, 2, 4));
  return out;
}

Report cmd_verify(const Config& c) {
  Report r;
  r.csv = "context,theorem,instance,lhs,rhs,pass\n";
  std::ostringstream text;
  json contexts = json::array();
  bool all_ok = true;
  for (const auto& ctx : verify_contexts(c)) {
    json results = json::array();
    for (const auto& s : suites()) {
      if (c.suite != "all" && c.suite != s.name) continue;
      json entry = {{"suite", s.name}};
      std::string skip;
      if (s.gl_only && ctx->flavor() != Flavor::GL) skip = "GL only";
      if (std::string(s.name) == "thm48" && ctx->n() < 2) skip = "needs n >= 2";
      if (!skip.empty()) {
        entry["skipped"] = skip;
        text << ctx->name() << " " << s.name << " skipped (" << skip << ")\n";
        results.push_back(std::move(entry));
        continue;
      }
      const auto records = s.run(*ctx, c);
      std::size_t failed = 0;
      json instances = json::array();
      for (const auto& rec : records) {
        failed += !rec.pass;
        instances.push_back({{"instance", rec.instance}, {"lhs", rec.lhs}, {"rhs", rec.rhs}, {"pass", rec.pass}});
        r.csv += rec.context + "," + rec.theorem + "," + rec.instance + "," + rec.lhs + "," + rec.rhs + "," +
                 (rec.pass ? "true" : "false") + "\n";
      }
      all_ok = all_ok && failed == 0;
      entry["checked"] = records.size();
      entry["failed"] = failed;
      entry["pass"] = failed == 0;
      entry["records"] = std::move(instances);
      results.push_back(std::move(entry));
      text << ctx->name() << " " << s.name << " " << records.size() - failed << "/" << records.size()
           << (failed ? " FAIL" : " pass") << "\n";
      for (const auto& rec : records)
        if (!rec.pass) text << "  FAIL " << rec.instance << " lhs=" << rec.lhs << " rhs=" << rec.rhs << "\n";
    }
    contexts.push_back({{"context", ctx->name()}, {"results", std::move(results)}});
  }
  text << (all_ok ? "all pass\n" : "FAILURES\n");
  r.data = {{"suite", c.suite}, {"pass", all_ok}, {"contexts", std::move(contexts)}};
  r.text = text.str();
  r.status = all_ok ? kOk : kCheckFailed;
  return r;
}

// ---- cyclic --------------------------------------------------------------------

Report cmd_cyclic(const Config& c) {
  const auto ctx = build(c);
  if (ctx->flavor() != Flavor::GL) throw Error(ErrorCode::WrongFlavor, "cyclic needs a GL context");
  const std::size_t m_max = c.m_max.value_or(ctx->order());
  const auto prop = counting::cyclic_proportion(*ctx);
  const auto z = counting::z_census(*ctx, m_max);
  const auto z_checks = counting::z_within_census(z, counting::census_constructive(*ctx, m_max));
  const auto profiles = counting::sweep_divisor_lattices(*ctx);
  const bool ok = prop.pass && all_pass(z_checks) && all_pass(profiles);

  Report r;
  r.data = context_json(*ctx);
  r.data["cyclic"] = prop.cyclic;
  r.data["proportion"] = rational_text(counting::Rational(static_cast<std::int64_t>(prop.cyclic),
                                                          static_cast<std::int64_t>(prop.total)));
  r.data["gap"] = rational_text(prop.gap);
  r.data["bound"] = rational_text(prop.bound);
  r.data["bound_pass"] = prop.pass;
  r.data["equality"] = prop.equality;
  json zt = json::array();
  r.csv = "m,z,x,pass\n";
  std::ostringstream text;
  text << ctx->name() << " cyclic " << prop.cyclic << "/" << prop.total << ", gap " << rational_text(prop.gap)
       << (prop.pass ? " <= " : " > ") << rational_text(prop.bound) << (prop.equality ? " (equality)" : "") << "\n";
  for (const auto& rec : z_checks) {
    const std::size_t m = std::stoul(rec.instance.substr(2));
    zt.push_back({{"m", m}, {"z", std::stoul(rec.lhs)}, {"x", std::stoul(rec.rhs)}, {"pass", rec.pass}});
    r.csv += std::to_string(m) + "," + rec.lhs + "," + rec.rhs + "," + (rec.pass ? "true" : "false") + "\n";
    text << "z(" << m << ")=" << rec.lhs << " |X_m|=" << rec.rhs << (rec.pass ? "" : " FAIL") << "\n";
  }
  r.data["z"] = std::move(zt);
  std::size_t failed = 0;
  json pf = json::array();
  for (const auto& rec : profiles) {
    failed += !rec.pass;
    pf.push_back({{"xi", rec.instance}, {"profile", rec.lhs}, {"lattice", rec.rhs}, {"pass", rec.pass}});
  }
  r.data["profiles"] = std::move(pf);
  r.data["pass"] = ok;
  text << "divisor lattices: " << profiles.size() - failed << "/" << profiles.size() << " pass\n";
  r.text = text.str();
  r.status = ok ? kOk : kCheckFailed;
  return r;
}

int status_of(const Error& e) {
  switch (e.code()) {
    case ErrorCode::CheckFailed: return kCheckFailed;
    case ErrorCode::CapExceeded: return kCapExceeded;
    default: return kUsage;
  }
}

void add_context_options(CLI::App* app, Config& c) {
  app->add_option("--flavor", c.flavor, "gl or pgl")
      ->transform(CLI::IsMember({"gl", "pgl"}, CLI::ignore_case))
      ->envname("GLC_FLAVOR");
  app->add_option("--n", c.n, "dimension")->envname("GLC_N");
  app->add_option("--q", c.q, "field size, a prime power")->envname("GLC_Q");
  app->add_option("--max-group-order", c.max_group_order, "cap on |G| for subgroup lattices")
      ->envname("GLC_MAX_GROUP_ORDER");
  app->add_option("--format", c.format, "json, csv or text")
      ->check(CLI::IsMember({"json", "csv", "text"}))
      ->envname("GLC_FORMAT");
  app->add_option("--out", c.out, "output file (default stdout)")->envname("GLC_OUT");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"Möbius functions, closures and censuses for small linear groups"};
  app.require_subcommand(1, 1);

  auto* mu = app.add_subcommand("mu", "mu(H,G) and its irreducible-overgroup expansion");
  auto* clo = app.add_subcommand("closure", "cl(H) and the invariant subspace lattice");
  auto* census = app.add_subcommand("census", "closed subgroups whose invariant lattice is a product of chains");
  auto* verify = app.add_subcommand("verify", "run identity sweeps");
  auto* cyc = app.add_subcommand("cyclic", "cyclic matrices: proportion, divisor lattices, z(m)");
  for (auto* sub : {mu, clo, census, verify, cyc}) add_context_options(sub, c);
  for (auto* sub : {mu, clo})
    sub->add_option("--gens", c.gens, "generators a,b;c,d separated by |")->envname("GLC_GENS");
  for (auto* sub : {census, cyc})
    sub->add_option("--m-max", c.m_max, "largest index (default |G|)")->envname("GLC_M_MAX");
  census->add_option("--method", c.method, "constructive, bruteforce or both")
      ->check(CLI::IsMember({"constructive", "bruteforce", "both"}))
      ->envname("GLC_METHOD");
  verify->add_option("--suite", c.suite, "lemma22, thm34, thm35, prop11, prop36, fact43, thm48 or all")
      ->check(CLI::IsMember({"lemma22", "thm34", "thm35", "prop11", "prop36", "fact43", "thm48", "all"}))
      ->envname("GLC_SUITE");
  verify->add_option("--psi-cap", c.psi_cap, "largest invariant family walked for thm35")->envname("GLC_PSI_CAP");

  std::vector<std::string> argv_store = {"glc"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  CLI::App* chosen = app.get_subcommands().front();
  for (const char* name : {"--flavor", "--n", "--q"})
    if (chosen->count(name) > 0) c.context_given = true;

  try {
    Report r;
    if (chosen == mu) r = cmd_mu(c);
    else if (chosen == clo) r = cmd_closure(c);
    else if (chosen == census) r = cmd_census(c);
    else if (chosen == verify) r = cmd_verify(c);
    else r = cmd_cyclic(c);

    const std::string body = c.format == "json" ? r.data.dump(2) + "\n" : c.format == "csv" ? r.csv : r.text;
    if (c.out.empty()) {
      out << body;
    } else {
      std::ofstream file(c.out, std::ios::binary);
      if (!file) throw Error(ErrorCode::InvalidArgs, "cannot write " + c.out);
      file << body;
    }
    return r.status;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return status_of(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace glc::cli
