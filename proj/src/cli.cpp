#include "parahoric/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <future>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "parahoric/errors.hpp"

namespace parahoric::cli {

using report::Json;

namespace {

std::string join(const std::vector<std::int64_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

std::string render(const charring::DominantMap& m) {
  if (m.empty()) return "0";
  std::string s;
  for (const auto& [w, c] : m) {
    if (!s.empty()) s += c < 0 ? " - " : " + ";
    else if (c < 0) s += "-";
    const auto a = c < 0 ? -c : c;
    if (a != 1) s += std::to_string(a) + "*";
    s += "chi(" + to_string(w) + ")";
  }
  return s;
}

CommandResult start(const std::string& command, Json inputs) {
  CommandResult r;
  r.envelope.command = command;
  r.envelope.inputs = std::move(inputs);
  return r;
}

void check(CommandResult& r, Json& checks, const std::string& name, const Json& expected, const Json& actual) {
  const bool ok = expected == actual;
  checks.push_back(Json{{"name", name}, {"expected", expected}, {"actual", actual}, {"ok", ok}});
  r.text.push_back((ok ? "[ok]       " : "[MISMATCH] ") + name + ": " + actual.dump() +
                   (ok ? "" : " (expected " + expected.dump() + ")"));
  r.ok = r.ok && ok;
}

Weight weight_of(const rootdata::RootDatum& rd, const std::string& text) {
  Weight w = parse_weight(text);
  if (w.size() != rd.rank())
    throw ParseError("weight '" + text + "' has " + std::to_string(w.size()) + " coordinates, expected " +
                     std::to_string(rd.rank()));
  return w;
}

} // namespace

// -------------------------------------------------------------------- rootsys

CommandResult cmd_rootsys(const std::string& type) {
  auto r = start("rootsys", Json{{"type", type}});
  const auto rd = rootdata::build_root_datum(type);
  Json out;
  out["type"] = rd.type().to_string();
  out["rank"] = rd.rank();
  out["semisimple_rank"] = rd.semisimple_rank();
  out["num_roots"] = rd.roots().size();
  out["num_positive_roots"] = rd.positive_roots().size();
  out["weyl_group_order"] = rootdata::weyl_group_order(rd).str();
  out["cartan"] = rd.cartan();
  out["components"] = Json::array();
  r.text.push_back("type " + rd.type().to_string() + ": lattice rank " + std::to_string(rd.rank()) + ", " +
                   std::to_string(rd.roots().size()) + " roots");
  if (rd.num_components() > 0) {
    const auto basis = affine::extended_basis(rd);
    for (std::size_t c = 0; c < rd.num_components(); ++c) {
      const auto& top = rootdata::highest_root(rd, c);
      const auto& comp = basis.components[c];
      out["components"].push_back(Json{{"type", rootdata::to_string(rd.component_type(c))},
                                       {"highest_root", report::weight_json(top.weight)},
                                       {"highest_root_coeffs", top.coeffs},
                                       {"marks", comp.marks},
                                       {"ell", comp.ell}});
      r.text.push_back("  " + rootdata::to_string(rd.component_type(c)) + ": highest root (" + to_string(top.weight) +
                       ") = [" + join(top.coeffs) + "], marks [" + join(comp.marks) + "], ell " +
                       std::to_string(comp.ell));
    }
  }
  r.envelope.outputs = std::move(out);
  return r;
}

// ------------------------------------------------------------------ parahoric

CommandResult cmd_parahoric(const std::string& type, const std::string& theta) {
  auto r = start("parahoric", Json{{"type", type}, {"theta", theta}});
  const auto rd = rootdata::build_root_datum(type);
  const auto model = affine::parahoric_model(rd, affine::FacetSpec::parse(theta, affine::extended_basis(rd)));
  const auto rec = report::make_record(model);
  r.envelope.outputs = report::to_json(rec);
  r.text.push_back("facet " + rec.theta + " of " + rec.type + ": depth [" + join(rec.depth) + "], quotient " +
                   rec.quotient_type + " (" + std::to_string(rec.quotient_roots.size()) + " roots), dim R = " +
                   std::to_string(rec.dim_R));
  for (const auto& l : rec.layers) r.text.push_back("  layer " + std::to_string(l.j) + ": dim " + std::to_string(l.dim));
  r.text.push_back(std::string("  literal Psi agrees with the window model: ") + (rec.psi_literal_agrees ? "yes" : "no"));
  return r;
}

// ----------------------------------------------------------------------- levi

CommandResult cmd_levi(const std::string& type, const std::string& theta, std::int64_t p, bool rank_refinement) {
  auto r = start("levi", Json{{"type", type}, {"theta", theta}, {"p", p}, {"rank_refinement", rank_refinement}});
  const auto rd = rootdata::build_root_datum(type);
  const auto model = affine::parahoric_model(rd, affine::FacetSpec::parse(theta, affine::extended_basis(rd)));
  const auto cert = levicert::certify(levicert::from_parahoric(model), p, rank_refinement);
  r.envelope.outputs = report::to_json(cert);
  r.text.push_back(std::string("existence: ") + levicert::to_string(cert.existence));
  r.text.push_back(std::string("conjugacy: ") + levicert::to_string(cert.conjugacy));
  for (const auto& rule : cert.rules)
    r.text.push_back("  (" + rule.id + ") " + (rule.satisfied ? "fires" : "fails") + ": " + rule.hypothesis + " " +
                     rule.values.dump());
  for (const auto& n : cert.notes) r.text.push_back("  note: " + n);
  return r;
}

// --------------------------------------------------------------------- facets

CommandResult cmd_facets(const std::string& type) {
  auto r = start("facets", Json{{"type", type}});
  const auto rd = rootdata::build_root_datum(type);
  const auto facets = affine::enumerate_facets(rd);

  std::vector<std::future<Json>> rows;
  for (const auto& f : facets)
    rows.push_back(std::async(std::launch::async, [&rd, f] {
      const auto m = affine::parahoric_model(rd, f);
      return Json{{"theta", f.to_string()},
                  {"depth", m.depth},
                  {"quotient_type", m.quotient_datum.type().to_string()},
                  {"deletion_type", affine::quotient_by_deletion(rd, f).to_string()},
                  {"dim_R", m.dim_R},
                  {"psi_literal_agrees", m.psi_literal_agrees}};
    }));

  Json out;
  out["type"] = rd.type().to_string();
  out["facets"] = Json::array();
  r.text.push_back(std::to_string(facets.size()) + " facets of " + rd.type().to_string());
  for (auto& fut : rows) {
    auto row = fut.get();
    r.text.push_back("  " + row["theta"].get<std::string>() + "\t" + row["quotient_type"].get<std::string>() +
                     "\tdim R = " + std::to_string(row["dim_R"].get<std::int64_t>()));
    out["facets"].push_back(std::move(row));
  }
  r.envelope.outputs = std::move(out);
  return r;
}

// ----------------------------------------------------------------- verify-sl3

CommandResult cmd_verify_sl3(std::int64_t p) {
  auto r = start("verify-sl3", Json{{"p", p}});
  jantzen::require_prime(p);
  if (p < 3) throw Error("verify-sl3 needs p >= 3");
  auto rd = charring::share(rootdata::build_root_datum("A2"));
  const Weight lambda{p, 0}, mu{p - 2, 1}, gamma{p - 3, 0};

  auto [rep_lambda, ledger] = jantzen::resolve_simple(rd, p, lambda, jantzen::SimpleLedger(p));
  auto [rep_mu, ledger2] = jantzen::resolve_simple(rd, p, mu, ledger);
  auto [rep_gamma, ledger3] = jantzen::resolve_simple(rd, p, gamma, ledger2);

  Json checks = Json::array();
  r.text.push_back("A2, p = " + std::to_string(p) + ": lambda = (" + to_string(lambda) + "), mu = (" + to_string(mu) +
                   "), gamma = (" + to_string(gamma) + ")");
  check(r, checks, "J(mu)", report::dominant_map_json({{gamma, 1}}), report::dominant_map_json(rep_mu.J.coeffs));
  check(r, checks, "J(lambda)", report::dominant_map_json({{mu, 1}, {gamma, -1}}),
        report::dominant_map_json(rep_lambda.J.coeffs));
  check(r, checks, "rad V(lambda)", report::weight_json(mu),
        rep_lambda.radical ? report::weight_json(*rep_lambda.radical) : Json(nullptr));
  check(r, checks, "L(gamma) lowest alcove", true, jantzen::lowest_alcove_test(*rd, p, gamma));

  Json ext2 = nullptr;
  try {
    ext2 = jantzen::ext2_chain(*rd, p, lambda, mu, gamma, ledger3);
  } catch (const HypothesisUnmet& e) {
    r.text.push_back(std::string("  ext2 chain unavailable: ") + e.what());
  }
  check(r, checks, "dim Ext^2(L(lambda), L(gamma))", 1, ext2);

  Json dim_w = nullptr;
  if (rep_lambda.chL && rep_gamma.chL)
    dim_w = charring::dim(charring::tensor(charring::dual(*rep_lambda.chL), *rep_gamma.chL)).convert_to<std::int64_t>();
  check(r, checks, "dim W", 3 * (p - 1) * (p - 2) / 2, dim_w);

  Json out;
  out["lambda"] = report::weight_json(lambda);
  out["mu"] = report::weight_json(mu);
  out["gamma"] = report::weight_json(gamma);
  out["jantzen"] = Json::array({report::to_json(report::make_record(rep_mu)),
                                report::to_json(report::make_record(rep_lambda)),
                                report::to_json(report::make_record(rep_gamma))});
  out["checks"] = std::move(checks);
  out["notes"] = Json::array({"the second sum is J(lambda) for lambda = p*w1, not J(mu)"});
  out["ok"] = r.ok;
  r.envelope.outputs = std::move(out);
  return r;
}

// ------------------------------------------------------------- verify-unitary

CommandResult cmd_verify_unitary(std::int64_t n, std::int64_t p) {
  auto r = start("verify-unitary", Json{{"n", n}, {"p", p}});
  const auto rep = levicert::unitary_report(n, p);
  const auto nn = static_cast<std::size_t>(n);
  Weight w2(nn);
  w2[1] = 1;

  Json checks = Json::array();
  r.text.push_back("C" + std::to_string(n) + ", p = " + std::to_string(p));
  check(r, checks, "expansion of the exterior square", report::dominant_map_json({{Weight(nn), 1}, {w2, 1}}),
        report::dominant_map_json(rep.expansion.coeffs));
  check(r, checks, "dim of the exterior square", n * (2 * n - 1), rep.dim_exterior_square);
  check(r, checks, "dim W0", 2 * n * n - n - 1, rep.dim_W0);
  check(r, checks, "weyl_dim(w2) = dim W0", rep.dim_W0, rep.weyl_dim_w2);
  check(r, checks, "trivial summand in W0 (2n = 0 in k)", n % p == 0, rep.trivial_summand_in_W0);

  const std::string verdict = rep.conjugacy ? "Levi factors are conjugate under H(k)"
                                            : "there are Levi factors not conjugate under H(k)";
  r.text.push_back("  existence: Levi factor exists");
  r.text.push_back("  conjugacy: " + verdict + (rep.conjugacy ? " (n not 0 mod p)" : " (n = 0 mod p)"));
  r.text.push_back(std::string("  certificate on W0 alone: existence ") + levicert::to_string(rep.certificate.existence) +
                   ", conjugacy " + levicert::to_string(rep.certificate.conjugacy));

  Json out = report::to_json(rep);
  out["verdicts"] = Json{{"existence", "Levi factor exists"}, {"conjugacy", verdict}};
  out["checks"] = std::move(checks);
  out["ok"] = r.ok;
  r.envelope.outputs = std::move(out);
  return r;
}

// ------------------------------------------------------------ character, jantzen

CommandResult cmd_character(const std::string& type, const std::string& weight) {
  auto r = start("character", Json{{"type", type}, {"weight", weight}});
  auto rd = charring::share(rootdata::build_root_datum(type));
  const auto ch = charring::chi_char(rd, weight_of(*rd, weight));
  Json out;
  out["dominant"] = report::dominant_map_json(ch.dominant());
  out["dim"] = charring::dim(ch).str();
  r.envelope.outputs = std::move(out);
  r.text.push_back("chi(" + weight + "): dim " + charring::dim(ch).str());
  for (const auto& [w, m] : ch.dominant()) r.text.push_back("  " + to_string(w) + "\t" + std::to_string(m));
  return r;
}

CommandResult cmd_jantzen(const std::string& type, const std::string& weight, std::int64_t p) {
  auto r = start("jantzen", Json{{"type", type}, {"weight", weight}, {"p", p}});
  auto rd = charring::share(rootdata::build_root_datum(type));
  const auto [rep, ledger] = jantzen::resolve_simple(rd, p, weight_of(*rd, weight), jantzen::SimpleLedger(p));
  const auto rec = report::make_record(rep);
  r.envelope.outputs = report::to_json(rec);
  r.text.push_back("J(" + weight + ") = " + render(rec.J));
  if (rec.chL_dim) {
    r.text.push_back("dim L(" + weight + ") = " + *rec.chL_dim + " [" + *rec.provenance + "]");
    if (rec.radical) r.text.push_back("rad V(" + weight + ") = L(" + to_string(*rec.radical) + ")");
  } else {
    r.text.push_back("L(" + weight + ") undetermined");
  }
  return r;
}

// ------------------------------------------------------------------------ run

std::optional<std::filesystem::path> default_cache_dir() {
  if (const char* d = std::getenv("PARAHORIC_CACHE_DIR"); d && *d) return std::filesystem::path(d);
  if (const char* d = std::getenv("XDG_CACHE_HOME"); d && *d) return std::filesystem::path(d) / "parahoric";
  if (const char* h = std::getenv("HOME"); h && *h) return std::filesystem::path(h) / ".cache" / "parahoric";
  return std::nullopt;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Parahoric special fibers: root data, facets, characters and Levi certificates", "parahoric"};
  app.require_subcommand(1);
  app.fallthrough();
  bool json = false, no_cache = false, refine = false;
  std::string type, theta, weight;
  std::int64_t p = 0, n = 0;
  app.add_flag("--json", json, "Emit the JSON report");
  app.add_flag("--no-cache", no_cache, "Do not read or write the character cache");

  auto* rootsys = app.add_subcommand("rootsys", "Roots, highest roots and marks of a type");
  rootsys->add_option("--type", type, "Type, e.g. A2, C3, A1xA1+T1")->required();
  auto* parahoric = app.add_subcommand("parahoric", "Reductive quotient and layers of a facet");
  parahoric->add_option("--type", type)->required();
  parahoric->add_option("--theta", theta, "Facet nodes, e.g. 0,2 (components separated by /)")->required();
  auto* levi = app.add_subcommand("levi", "Levi certificate for a facet");
  levi->add_option("--type", type)->required();
  levi->add_option("--theta", theta)->required();
  levi->add_option("--p", p)->required();
  levi->add_flag("--rank-refinement", refine, "Use the r*p bound for a simple quotient");
  auto* facets = app.add_subcommand("facets", "All facets of the fundamental alcove");
  facets->add_option("--type", type)->required();
  auto* sl3 = app.add_subcommand("verify-sl3", "Recompute the SL3 Ext^2 example");
  sl3->add_option("--p", p)->required();
  auto* unitary = app.add_subcommand("verify-unitary", "Recompute the even unitary example");
  unitary->add_option("--n", n)->required();
  unitary->add_option("--p", p)->required();
  auto* character = app.add_subcommand("character", "Weyl character by Freudenthal's formula");
  character->add_option("--type", type)->required();
  character->add_option("--weight", weight, "Fundamental-weight coordinates, e.g. 1,0")->required();
  auto* jz = app.add_subcommand("jantzen", "Jantzen sum and simple character");
  jz->add_option("--type", type)->required();
  jz->add_option("--weight", weight)->required();
  jz->add_option("--p", p)->required();

  std::vector<std::string> rest(args.rbegin(), args.rend());
  if (!rest.empty()) rest.pop_back(); // program name
  try {
    app.parse(rest);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, x;
    const int code = app.exit(e, o, x);
    out << o.str();
    err << x.str();
    return code == 0 ? kOk : kUsage;
  }

  auto& cache = charring::FreudenthalCache::global();
  cache.set_enabled(!no_cache);
  cache.set_directory(no_cache ? std::nullopt : default_cache_dir());

  const auto t0 = std::chrono::steady_clock::now();
  CommandResult result;
  try {
    if (*rootsys) result = cmd_rootsys(type);
    else if (*parahoric) result = cmd_parahoric(type, theta);
    else if (*levi) result = cmd_levi(type, theta, p, refine);
    else if (*facets) result = cmd_facets(type);
    else if (*sl3) result = cmd_verify_sl3(p);
    else if (*unitary) result = cmd_verify_unitary(n, p);
    else if (*character) result = cmd_character(type, weight);
    else if (*jz) result = cmd_jantzen(type, weight, p);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  result.envelope.elapsed_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();

  if (json) {
    out << report::to_json(result.envelope).dump(2) << '\n';
  } else {
    for (const auto& line : result.text) out << line << '\n';
  }
  return result.ok ? kOk : kMismatch;
}

} // namespace parahoric::cli
