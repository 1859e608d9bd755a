#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "ppg/ppg.hpp"

using namespace ppg;

namespace {

enum Exit { kOk = 0, kNegative = 1, kUsage = 2, kScope = 3 };

struct Options {
  bool json = false;
  std::string out;
};

int exit_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::ScopeTooLarge:
    case ErrorKind::SearchSpaceTooLarge:
    case ErrorKind::StabilizationFailure:
    case ErrorKind::Overflow: return kScope;
    case ErrorKind::NotPure:
    case ErrorKind::NotAPureIso:
    case ErrorKind::UlmMismatch: return kNegative;
    default: return kUsage;
  }
}

std::string codes(const json& gens) {
  std::ostringstream s;
  s << "<";
  for (std::size_t i = 0; i < gens.size(); ++i) s << (i ? ", " : "") << gens[i].dump();
  s << ">";
  return s.str();
}

void print_triple(std::ostream& o, const json& t) {
  o << "m = " << t["m"] << ", stabilization K = " << t["stabilization"] << "\n";
  o << "omega: " << codes(t["omega"]) << "\n";
  for (std::size_t k = 0; k < t["eta"].size(); ++k) {
    const bool top = k + 1 == t["eta"].size();
    o << "eta[" << (top ? std::string("w") : std::to_string(k)) << "]: " << codes(t["eta"][k]) << "\n";
  }
}

std::string mult_text(const json& m) { return m.is_string() ? m.get<std::string>() : m.dump(); }

/// Text rendering of an issued certificate.
void print_text(std::ostream& o, const json& c) {
  const std::string kind = c["kind"];
  const json& ev = c["evidence"];
  if (kind == "eval") {
    o << (ev["holds"].get<bool>() ? "holds" : "fails") << "\n" << "simplified: " << ev["simplified"].get<std::string>() << "\n";
    for (const auto& a : ev["atoms"]) o << "  " << a["atom"].get<std::string>() << ": " << (a["holds"].get<bool>() ? "yes" : "no") << "\n";
  } else if (kind == "type") {
    print_triple(o, ev["triple"]);
  } else if (kind == "pure") {
    if (ev["pure"].get<bool>()) o << "pure\n";
    else o << "not pure: " << ev["witness"].get<std::string>() << (ev["holds_in_source"].get<bool>() ? " holds in source only\n" : " holds in target only\n");
  } else if (kind == "hull") {
    o << "hull: " << ev["hull"].get<std::string>() << "\n" << "embedding: " << ev["embed"].get<std::string>() << "\n"
      << "stabilization: " << ev["stabilization"] << "\n";
    for (const auto& l : ev["links"]) {
      o << "  socle " << l["socle"].get<std::string>();
      if (!l["linked"].get<bool>()) o << " not linked\n";
      else if (l["zero"].get<bool>()) o << ": p^" << l["z_exp"] << " u = " << l["b"].get<std::string>() << "\n";
      else o << ": p^" << l["k"] << " | p^" << l["z_exp"] << " u - " << l["b"].get<std::string>() << "\n";
    }
  } else if (kind == "embed") {
    for (const auto& b : ev["blocks"]) {
      o << "p = " << b["prime"] << ": " << b["map"]["source"].get<std::string>() << " -> " << b["map"]["target"].get<std::string>() << "\n";
      const json& pc = b["purity"];
      o << "  checked " << pc["checked"] << " elements to depth " << pc["depth"] << ": " << (pc["pure"].get<bool>() ? "pure" : "NOT pure") << "\n";
    }
  } else if (kind == "classify") {
    const std::string v = ev["verdict"];
    o << v;
    if (v == "CaseB") o << " (n = " << ev["n"] << ")";
    if (v == "No") o << ": a = " << ev["a"].get<std::string>() << ", b = " << ev["b"].get<std::string>() << ", alpha = " << ev["alpha"].get<std::string>();
    o << "\n";
  } else if (kind == "extend") {
    if (ev["extended"].get<bool>()) o << "extended (Pruefer precision " << ev["precision"] << ")\n";
    else o << "not pure: " << ev["witness"].get<std::string>() << "\n";
  } else if (kind == "ulm") {
    const json& u = ev["invariants"];
    o << "f(j) at every finite j: " << mult_text(u["every_finite"]) << "\n";
    for (const auto& f : u["finite"]) o << "  plus " << mult_text(f[1]) << " at j = " << f[0] << "\n";
    for (const auto& f : u["omega"]) o << "f(w+" << f[0] << ") = " << mult_text(f[1]) << "\n";
    o << "divisible rank: " << mult_text(u["divisible_rank"]) << "\n";
    if (ev.contains("sequence")) {
      o << "sequence:";
      for (const auto& h : ev["sequence"]) o << " " << h.get<std::string>();
      o << "\n";
    }
  } else if (kind == "census") {
    o << "count: " << ev["count"] << "\n";
    for (const auto& t : ev["types"]) o << "  " << t["witness"].get<std::string>() << "  m = " << t["triple"]["m"] << ", K = " << t["triple"]["stabilization"] << "\n";
  }
}

int emit(const Options& opt, const cert::Issued& is) {
  const std::string text = cert::dump(is.cert);
  if (!opt.out.empty()) {
    std::ofstream f(opt.out, std::ios::binary);
    if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write " + opt.out);
    f << text;
  }
  if (opt.json) std::cout << text;
  else print_text(std::cout, is.cert);
  return is.positive ? kOk : kNegative;
}

GroupRef group_arg(const std::string& text) { return make_group(parse_group(text)); }

/// One pretty-printed document, or one certificate per line.
std::vector<json> read_certificates(const std::string& path) {
  std::stringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorKind::InvalidArgument, "cannot read " + path);
    buf << f.rdbuf();
  }
  const std::string text = buf.str();
  json one = json::parse(text, nullptr, false);
  if (!one.is_discarded()) return {one};
  std::vector<json> out;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded()) throw Error(ErrorKind::ParseError, "malformed certificate in " + path);
    out.push_back(std::move(j));
  }
  return out;
}

int run_revalidate(const Options& opt, const std::vector<std::string>& files) {
  bool all = true;
  json reports = json::array();
  for (const auto& path : files)
    for (const json& c : read_certificates(path)) {
      const cert::Report r = cert::revalidate(c);
      all = all && r.ok();
      if (opt.json) {
        json checks = json::array();
        for (const auto& k : r.checks) checks.push_back({{"name", k.name}, {"ok", k.ok}});
        reports.push_back({{"file", path}, {"kind", r.kind}, {"ok", r.ok()}, {"checks", checks}});
      } else {
        std::cout << path << " [" << r.kind << "]: " << (r.ok() ? "ok" : "REJECTED") << "\n";
        for (const auto& k : r.checks) std::cout << "  " << (k.ok ? "ok   " : "FAIL ") << k.name << "\n";
      }
    }
  if (opt.json) std::cout << reports.dump(2) << "\n";
  return all ? kOk : kNegative;
}

int run_selftest() {
  struct Case {
    const char* name;
    std::function<bool()> f;
  };
  const std::vector<Case> cases = {
      {"height of a_0 in H(2,w+2) is w", [] {
         auto g = group_arg("H(2,w+2)");
         return height(gen_pruefer_generator(g, {0, 0}, 0)) == Ordinal::omega_plus(0);
       }},
      {"E w: 4 w = 2 x1 simplifies to 2^2 | 2 x1", [] {
         return print_formula(PpFormula(as_simplified(parse_formula("E w: 4 w = 2 x1")))) == "2^2 | 2 x1";
       }},
      {"census of Z(2)+Z(4)+Z(8)+Z(2^inf) at m <= 1 has 5 types", [] {
         return enumerate_types(2, 1, 1, group_arg("Z(2^1) + Z(2^2) + Z(2^3) + Z(2^inf)")).size() == 5;
       }},
      {"H(2,w+1) + Z(2^inf) is not homogeneous", [] {
         auto g = group_arg("H(2,w+1) + Z(2^inf)");
         return validate_no_witness(g, classify_homogeneous(g));
       }},
      {"universal embedding of H(3,w+1) is pure", [] {
         return cert::revalidate(cert::issue_embed(group_arg("H(3,w+1)")).cert).ok();
       }},
      {"extension in Z(2) + Z(4) revalidates", [] {
         auto g = group_arg("Z(2^1) + Z(2^2)");
         return cert::revalidate(cert::issue_extend(g, parse_tuple("[(1, 1)]", g), parse_tuple("[(0, 1)]", g)).cert).ok();
       }},
  };
  bool all = true;
  for (const auto& c : cases) {
    bool ok = false;
    try {
      ok = c.f();
    } catch (const std::exception& e) {
      std::cout << "  error: " << e.what() << "\n";
    }
    std::cout << (ok ? "PASS " : "FAIL ") << c.name << "\n";
    all = all && ok;
  }
  return all ? kOk : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations in abelian p-groups"};
  app.require_subcommand(1);
  Options opt;
  app.add_flag("--json", opt.json, "Print the certificate envelope");
  app.add_option("--out", opt.out, "Also write the certificate to a file");

  std::string group, formula, tuple, target, image, element, ambient;
  std::vector<std::string> files;
  bool torsion = false;
  i64 prime = 0, p = 2;
  std::size_t arity = 1;
  int mbound = 1;

  auto* eval = app.add_subcommand("eval", "Evaluate a pp-formula on a tuple");
  eval->add_option("group", group)->required();
  eval->add_option("formula", formula)->required();
  eval->add_option("--tuple", tuple)->required();

  auto* type = app.add_subcommand("type", "pp-type triple of a tuple");
  type->add_option("group", group)->required();
  type->add_option("--tuple", tuple)->required();
  type->add_option("--prime", prime, "Component of a multi-prime torsion group");

  auto* pure = app.add_subcommand("pure", "Is b -> c a partial pure monomorphism");
  pure->add_option("group", group)->required();
  pure->add_option("--tuple", tuple)->required();
  pure->add_option("--target", target, "Target group (default: same group)");
  pure->add_option("--image", image)->required();

  auto* hull_cmd = app.add_subcommand("hull", "Pure-injective hull of a generated subgroup");
  hull_cmd->add_option("group", group)->required();
  hull_cmd->add_option("--tuple", tuple)->required();

  auto* embed = app.add_subcommand("embed", "Pure embedding into the universal group");
  embed->add_option("group", group)->required();
  embed->add_flag("--torsion", torsion, "Accept several primes, one block per prime");

  auto* classify = app.add_subcommand("classify", "Strong homogeneity verdict");
  classify->add_option("group", group)->required();

  auto* extend = app.add_subcommand("extend", "Extend b -> c to an automorphism");
  extend->add_option("group", group)->required();
  extend->add_option("--tuple", tuple)->required();
  extend->add_option("--image", image)->required();

  auto* ulm = app.add_subcommand("ulm", "Ulm invariants and Ulm sequence");
  ulm->add_option("group", group)->required();
  ulm->add_option("--element", element);

  auto* census = app.add_subcommand("census", "Enumerate realised pp-type triples");
  census->add_option("--p", p)->required();
  census->add_option("--arity", arity)->required();
  census->add_option("--mbound", mbound)->required();
  census->add_option("--ambient", ambient)->required();

  auto* reval = app.add_subcommand("revalidate", "Re-check certificates against the oracle");
  reval->add_option("files", files, "Certificate files ('-' for stdin)")->required();

  auto* selftest = app.add_subcommand("selftest", "Run built-in checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*eval) {
      auto g = group_arg(group);
      auto a = parse_tuple(tuple, g);
      return emit(opt, cert::issue_eval(g, parse_formula(formula, a.size()), a));
    }
    if (*type) {
      GroupRef g;
      if (prime) {
        const TorsionGroupSpec t = parse_torsion_group(group);
        auto it = t.components.find(prime);
        if (it == t.components.end()) throw Error(ErrorKind::InvalidArgument, "no component for that prime");
        g = make_group(it->second);
      } else {
        g = group_arg(group);
      }
      return emit(opt, cert::issue_type(g, parse_tuple(tuple, g)));
    }
    if (*pure) {
      auto m = group_arg(group);
      auto n = target.empty() ? m : group_arg(target);
      return emit(opt, cert::issue_pure(m, parse_tuple(tuple, m), n, parse_tuple(image, n)));
    }
    if (*hull_cmd) {
      auto g = group_arg(group);
      return emit(opt, cert::issue_hull(g, parse_tuple(tuple, g)));
    }
    if (*embed) {
      if (torsion) return emit(opt, cert::issue_embed_torsion(parse_torsion_group(group)));
      return emit(opt, cert::issue_embed(group_arg(group)));
    }
    if (*classify) return emit(opt, cert::issue_classify(group_arg(group)));
    if (*extend) {
      auto g = group_arg(group);
      return emit(opt, cert::issue_extend(g, parse_tuple(tuple, g), parse_tuple(image, g)));
    }
    if (*ulm) {
      auto g = group_arg(group);
      std::optional<Element> x;
      if (!element.empty()) x = parse_element(element, g);
      return emit(opt, cert::issue_ulm(g, x));
    }
    if (*census) {
      if (arity == 0) throw Error(ErrorKind::InvalidArgument, "arity must be positive");
      return emit(opt, cert::issue_census(p, arity, mbound, group_arg(ambient)));
    }
    if (*reval) return run_revalidate(opt, files);
    if (*selftest) return run_selftest();
  } catch (const Error& e) {
    std::cerr << "ppg: " << e.what() << "\n";
    if (opt.json) std::cout << json{{"error", to_string(e.kind())}, {"message", e.what()}}.dump(2) << "\n";
    return exit_for(e.kind());
  } catch (const json::exception& e) {
    std::cerr << "ppg: malformed certificate: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
