// Command-line interface: evaluation of the series families, the identity
// suite, catalog listing and value tables.
//
// Exit codes: 0 success, 1 failed identity check, 2 divergence detected,
// 64 usage error, 65 domain/input error.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "appell/report.hpp"

namespace {

using namespace appell;

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitDiverged = 2;
constexpr int kExitUsage = 64;
constexpr int kExitDomain = 65;

struct CliError : std::runtime_error {
  int code;
  CliError(int c, const std::string& what) : std::runtime_error(what), code(c) {}
};

// Complex literals: "1.5", "-0.3", "1+2i", "2i", "-i", "1e-3-2.5e-2i".
Cplx parse_complex(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw CliError(kExitUsage, "empty numeric literal");
  if (s.back() != 'i' && s.back() != 'I') {
    size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw CliError(kExitUsage, "bad numeric literal: " + raw);
    return Cplx(v, 0.0);
  }
  std::string body = s.substr(0, s.size() - 1);
  // split the trailing imaginary term from an optional real part
  size_t split = std::string::npos;
  for (size_t i = body.size(); i-- > 1;) {
    char c = body[i];
    if ((c == '+' || c == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  auto parse_real = [&](const std::string& t) -> double {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    size_t pos = 0;
    double v = std::stod(t, &pos);
    if (pos != t.size()) throw CliError(kExitUsage, "bad numeric literal: " + raw);
    return v;
  };
  if (split == std::string::npos) return Cplx(0.0, parse_real(body));
  return Cplx(parse_real(body.substr(0, split)), parse_real(body.substr(split)));
}

Rational parse_rational_part(const std::string& t) {
  if (t.empty() || t == "+") return Rational(1);
  if (t == "-") return Rational(-1);
  auto slash = t.find('/');
  if (slash != std::string::npos) {
    return Rational(BigInt(t.substr(0, slash)), BigInt(t.substr(slash + 1)));
  }
  auto dot = t.find('.');
  if (dot == std::string::npos) return Rational(BigInt(t));
  std::string digits = t.substr(0, dot) + t.substr(dot + 1);
  const size_t frac_len = t.size() - dot - 1;
  Rational den = 1;
  for (size_t i = 0; i < frac_len; ++i) den *= 10;
  return Rational(BigInt(digits)) / den;
}

// Exact parse of panel values: JSON numbers carry their binary value
// verbatim; strings allow fractions and decimal literals.
ExactScalar parse_exact(const nlohmann::json& v) {
  if (v.is_number_integer()) return ExactScalar(Rational(v.get<long long>()));
  if (v.is_number_float()) return ExactScalar(Rational(v.get<double>()));
  if (v.is_array()) {
    if (v.size() != 2) throw CliError(kExitDomain, "complex array must be [re, im]");
    ExactScalar re_ = parse_exact(v[0]), im_ = parse_exact(v[1]);
    return ExactScalar(re_.re, im_.re);
  }
  if (v.is_string()) {
    std::string s;
    for (char c : v.get<std::string>())
      if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw CliError(kExitDomain, "empty panel value");
    if (s.back() == 'i' || s.back() == 'I') {
      std::string body = s.substr(0, s.size() - 1);
      size_t split = std::string::npos;
      for (size_t i = body.size(); i-- > 1;) {
        char c = body[i];
        if ((c == '+' || c == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
          split = i;
          break;
        }
      }
      if (split == std::string::npos) return ExactScalar(Rational(0), parse_rational_part(body));
      return ExactScalar(parse_rational_part(body.substr(0, split)),
                         parse_rational_part(body.substr(split)));
    }
    return ExactScalar(parse_rational_part(s));
  }
  throw CliError(kExitDomain, "panel value must be a number, string or [re, im]");
}

struct OutputOpts {
  std::string format = "plain";
};

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct ParamFlags {
  std::string a1 = "0", a2 = "0", b1 = "0", b2 = "0", c = "0";
  std::string t1 = "0", t2 = "0", t = "0", a = "0";
  int k1 = 0, k2 = 0, k = 0;
  std::string x = "0", y = "0", z = "0";
  std::string uj, ux, uy, lj, lx, ly;
};

std::vector<Cplx> parse_list(const std::string& s) {
  std::vector<Cplx> out;
  std::string item;
  std::stringstream ss(s);
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(parse_complex(item));
  return out;
}

void add_param_flags(CLI::App* cmd, ParamFlags& pf) {
  cmd->add_option("--a1", pf.a1);
  cmd->add_option("--a2", pf.a2);
  cmd->add_option("--b1", pf.b1);
  cmd->add_option("--b2", pf.b2);
  cmd->add_option("--c", pf.c);
  cmd->add_option("--t1", pf.t1);
  cmd->add_option("--t2", pf.t2);
  cmd->add_option("--t", pf.t);
  cmd->add_option("--a", pf.a, "parameter of 1f0d");
  cmd->add_option("--k1", pf.k1);
  cmd->add_option("--k2", pf.k2);
  cmd->add_option("--k", pf.k);
  cmd->add_option("--x", pf.x);
  cmd->add_option("--y", pf.y);
  cmd->add_option("--z", pf.z, "argument of 1f0d");
  cmd->add_option("--uj", pf.uj, "kdf joint upper list, comma separated");
  cmd->add_option("--ux", pf.ux, "kdf x upper list");
  cmd->add_option("--uy", pf.uy, "kdf y upper list");
  cmd->add_option("--lj", pf.lj, "kdf joint lower list");
  cmd->add_option("--lx", pf.lx, "kdf x lower list");
  cmd->add_option("--ly", pf.ly, "kdf y lower list");
}

TruncationPolicy policy_from_env_and_flags(int max_m, int max_n, double tol, int window) {
  TruncationPolicy pol;
  if (const char* env = std::getenv("APPELL_MAX_TERMS")) {
    int v = std::atoi(env);
    if (v >= 1) {
      pol.max_m = v;
      pol.max_n = v;
    }
  }
  if (max_m > 0) pol.max_m = max_m;
  if (max_n > 0) pol.max_n = max_n;
  if (tol > 0) pol.tol = tol;
  if (window > 0) pol.divergence_window = window;
  return pol;
}

Evaluation eval_function(const std::string& fn, const ParamFlags& pf,
                         const TruncationPolicy& pol) {
  const Point pt{parse_complex(pf.x), parse_complex(pf.y)};
  if (fn == "f3") {
    return eval_f3_classical(parse_complex(pf.a1), parse_complex(pf.a2), parse_complex(pf.b1),
                             parse_complex(pf.b2), parse_complex(pf.c), pt, pol);
  }
  if (fn == "f3d1" || fn == "xi11" || fn == "xi21") {
    Params1 p;
    p.a1 = parse_complex(pf.a1);
    p.a2 = parse_complex(pf.a2);
    p.b1 = parse_complex(pf.b1);
    p.b2 = parse_complex(pf.b2);
    p.c = parse_complex(pf.c);
    p.t1 = parse_complex(pf.t1);
    p.t2 = parse_complex(pf.t2);
    p.k1 = pf.k1;
    p.k2 = pf.k2;
    if (fn == "f3d1") return eval_f3_disc1(p, pt, pol);
    return eval_xi(fn == "xi11" ? XiVariant::Xi1_1 : XiVariant::Xi2_1, p, pt, pol);
  }
  if (fn == "f3d2" || fn == "xi12" || fn == "xi22") {
    Params2 p;
    p.a1 = parse_complex(pf.a1);
    p.a2 = parse_complex(pf.a2);
    p.b1 = parse_complex(pf.b1);
    p.b2 = parse_complex(pf.b2);
    p.c = parse_complex(pf.c);
    p.t = parse_complex(pf.t);
    p.k = pf.k;
    if (fn == "f3d2") return eval_f3_disc2(p, pt, pol);
    return eval_xi(fn == "xi12" ? XiVariant::Xi1_2 : XiVariant::Xi2_2, p, pt, pol);
  }
  if (fn == "kdf") {
    KdfSpec s;
    s.upper_joint = parse_list(pf.uj);
    s.upper_x = parse_list(pf.ux);
    s.upper_y = parse_list(pf.uy);
    s.lower_joint = parse_list(pf.lj);
    s.lower_x = parse_list(pf.lx);
    s.lower_y = parse_list(pf.ly);
    return eval_kdf(s, pt, pol);
  }
  if (fn == "1f0d") {
    return eval_1f0_disc(parse_complex(pf.a), parse_complex(pf.t), pf.k, parse_complex(pf.z),
                         pol);
  }
  throw CliError(kExitUsage, "unknown function: " + fn);
}

void print_evaluation(const std::string& fn, const Evaluation& ev, bool diverged,
                      const OutputOpts& out) {
  if (out.format == "json") {
    std::cout << write_canonical_json(json_evaluation(fn, ev, diverged));
  } else if (out.format == "csv") {
    std::cout << "value_re,value_im,terms_used,terminated,converged,est_error,diverged\n";
    std::cout << fmt17(ev.value.real()) << ',' << fmt17(ev.value.imag()) << ',' << ev.terms_used
              << ',' << (ev.terminated ? 1 : 0) << ',' << (ev.converged ? 1 : 0) << ','
              << fmt17(ev.est_error) << ',' << (diverged ? 1 : 0) << '\n';
  } else {
    std::cout << fn << " = " << fmt17(ev.value.real());
    if (ev.value.imag() != 0.0)
      std::cout << (ev.value.imag() < 0 ? " - " : " + ") << fmt17(std::abs(ev.value.imag()))
                << "i";
    std::cout << "\n  terms_used: " << ev.terms_used << "\n  terminated: " << std::boolalpha
              << ev.terminated << "\n  converged:  " << ev.converged
              << "\n  est_error:  " << fmt17(ev.est_error) << "\n";
    if (diverged) std::cout << "  divergence detected\n";
  }
}

std::vector<PanelCase> load_panel(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CliError(kExitDomain, "cannot open panel file: " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const std::exception& e) {
    throw CliError(kExitDomain, std::string("malformed panel: ") + e.what());
  }
  if (!doc.is_array()) throw CliError(kExitDomain, "panel must be a JSON array");
  std::vector<PanelCase> panel;
  int idx = 0;
  for (const auto& entry : doc) {
    if (!entry.is_object() || !entry.contains("params") || !entry.contains("point"))
      throw CliError(kExitDomain, "panel entries need params and point");
    const auto& pj = entry["params"];
    const auto& ptj = entry["point"];
    ExactPoint pt{parse_exact(ptj.value("x", nlohmann::json(0.0))),
                  parse_exact(ptj.value("y", nlohmann::json(0.0)))};
    std::string label = entry.value("label", "case-" + std::to_string(idx));
    const bool joint = pj.contains("t") || pj.contains("k");
    if (joint) {
      ExactParams2 p;
      p.a1 = parse_exact(pj.value("a1", nlohmann::json(0.0)));
      p.a2 = parse_exact(pj.value("a2", nlohmann::json(0.0)));
      p.b1 = parse_exact(pj.value("b1", nlohmann::json(0.0)));
      p.b2 = parse_exact(pj.value("b2", nlohmann::json(0.0)));
      p.c = parse_exact(pj.value("c", nlohmann::json(0.0)));
      p.t = parse_exact(pj.value("t", nlohmann::json(0.0)));
      p.k = pj.value("k", 0);
      panel.push_back(make_case2(p, pt, label));
    } else {
      ExactParams1 p;
      p.a1 = parse_exact(pj.value("a1", nlohmann::json(0.0)));
      p.a2 = parse_exact(pj.value("a2", nlohmann::json(0.0)));
      p.b1 = parse_exact(pj.value("b1", nlohmann::json(0.0)));
      p.b2 = parse_exact(pj.value("b2", nlohmann::json(0.0)));
      p.c = parse_exact(pj.value("c", nlohmann::json(0.0)));
      p.t1 = parse_exact(pj.value("t1", nlohmann::json(0.0)));
      p.t2 = parse_exact(pj.value("t2", nlohmann::json(0.0)));
      p.k1 = pj.value("k1", 0);
      p.k2 = pj.value("k2", 0);
      panel.push_back(make_case1(p, pt, label));
    }
    ++idx;
  }
  return panel;
}

int cmd_check(const std::string& group, const std::string& panel_path, const OutputOpts& out,
              const TruncationPolicy& pol, bool with_exact) {
  std::optional<Group> filter;
  if (!group.empty() && group != "all") {
    filter = group_from_name(group);
    if (!filter) throw CliError(kExitUsage, "unknown group: " + group);
  }
  std::vector<PanelCase> panel = panel_path.empty() ? default_panel() : load_panel(panel_path);
  const SuiteReport rep = run_suite(catalog(), panel, filter, pol, with_exact);
  if (out.format == "json") {
    std::cout << write_canonical_json(json_suite_report(rep, panel));
  } else if (out.format == "csv") {
    std::cout << "identity_id,group,paper_eq,case,abs,rel,pass,skipped\n";
    for (const auto& e : rep.entries)
      for (const auto& c : e.cases)
        std::cout << e.id << ',' << group_name(e.group) << ",\"" << e.paper_eq << "\"," << c.label
                  << ',' << fmt17(c.abs) << ',' << fmt17(c.rel) << ',' << (c.pass ? 1 : 0) << ','
                  << (c.skipped ? 1 : 0) << '\n';
  } else {
    if (rep.identities_checked == 0) {
      std::cout << "no cases\n";
      return kExitOk;
    }
    for (const auto& e : rep.entries) {
      if (e.checked == 0) continue;
      double worst = 0.0;
      int ran = 0;
      for (const auto& c : e.cases)
        if (!c.skipped) {
          worst = std::max(worst, c.rel);
          ++ran;
        }
      std::printf("%-10s %-5s %-18s cases=%d worst_rel=%-12.3e %s\n", e.id.c_str(),
                  group_name(e.group), e.paper_eq.c_str(), ran, worst,
                  e.pass ? "PASS" : "FAIL");
    }
    std::printf("summary: %d checked, %d passed, %d failed (%.2fs)\n", rep.identities_checked,
                rep.identities_passed, rep.identities_failed, rep.elapsed_seconds);
  }
  return rep.all_pass ? kExitOk : kExitFail;
}

int cmd_list(const std::string& group, const OutputOpts& out) {
  std::optional<Group> filter;
  if (!group.empty() && group != "all") {
    filter = group_from_name(group);
    if (!filter) throw CliError(kExitUsage, "unknown group: " + group);
  }
  auto items = list_identities(catalog(), filter);
  if (out.format == "json") {
    OrderedJson arr = OrderedJson::array();
    for (const auto* id : items) {
      OrderedJson j = OrderedJson::object();
      j["identity_id"] = id->id;
      j["group"] = group_name(id->group);
      j["paper_eq"] = id->paper_eq;
      j["variant"] = id->variant == Variant::V1 ? 1 : 2;
      if (!id->note.empty()) j["note"] = id->note;
      arr.push_back(j);
    }
    std::cout << write_canonical_json(arr);
  } else if (out.format == "csv") {
    std::cout << "identity_id,group,paper_eq,variant\n";
    for (const auto* id : items)
      std::cout << id->id << ',' << group_name(id->group) << ",\"" << id->paper_eq << "\","
                << (id->variant == Variant::V1 ? 1 : 2) << '\n';
  } else {
    for (const auto* id : items) {
      std::printf("%-10s %-5s %s%s%s\n", id->id.c_str(), group_name(id->group),
                  id->paper_eq.c_str(), id->note.empty() ? "" : "  -- ", id->note.c_str());
    }
    std::printf("%zu identities\n", items.size());
  }
  return kExitOk;
}

struct Sweep {
  std::string axis;
  std::vector<std::string> values;
};

Sweep parse_sweep(const std::string& s) {
  auto eq = s.find('=');
  if (eq == std::string::npos) throw CliError(kExitUsage, "sweep must look like x=0,0.25,0.5");
  Sweep sw;
  sw.axis = s.substr(0, eq);
  std::stringstream ss(s.substr(eq + 1));
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) sw.values.push_back(item);
  if (sw.values.empty()) throw CliError(kExitUsage, "sweep has no values");
  return sw;
}

void set_axis(ParamFlags& pf, const std::string& axis, const std::string& value) {
  if (axis == "x") pf.x = value;
  else if (axis == "y") pf.y = value;
  else if (axis == "z") pf.z = value;
  else if (axis == "a1") pf.a1 = value;
  else if (axis == "a2") pf.a2 = value;
  else if (axis == "b1") pf.b1 = value;
  else if (axis == "b2") pf.b2 = value;
  else if (axis == "c") pf.c = value;
  else if (axis == "t1") pf.t1 = value;
  else if (axis == "t2") pf.t2 = value;
  else if (axis == "t") pf.t = value;
  else if (axis == "a") pf.a = value;
  else throw CliError(kExitUsage, "unknown sweep axis: " + axis);
}

int cmd_table(const std::string& fn, const ParamFlags& base, const std::vector<std::string>& raw,
              const OutputOpts& out, const TruncationPolicy& pol) {
  if (raw.empty() || raw.size() > 2) throw CliError(kExitUsage, "table needs 1 or 2 --sweep axes");
  std::vector<Sweep> sweeps;
  for (const auto& s : raw) sweeps.push_back(parse_sweep(s));
  const Sweep& outer = sweeps[0];
  const Sweep inner = sweeps.size() > 1 ? sweeps[1] : Sweep{};
  bool any_diverged = false;

  struct Cell {
    std::string v0, v1;
    Evaluation ev;
    bool diverged = false;
  };
  std::vector<Cell> cells;
  for (const auto& v0 : outer.values) {
    const std::vector<std::string> inner_vals = inner.values.empty()
                                                    ? std::vector<std::string>{""}
                                                    : inner.values;
    for (const auto& v1 : inner_vals) {
      ParamFlags pf = base;
      set_axis(pf, outer.axis, v0);
      if (!inner.axis.empty()) set_axis(pf, inner.axis, v1);
      Cell cell;
      cell.v0 = v0;
      cell.v1 = v1;
      try {
        cell.ev = eval_function(fn, pf, pol);
      } catch (const DivergenceDetected& e) {
        cell.ev = e.partial;
        cell.diverged = true;
        any_diverged = true;
      }
      cells.push_back(std::move(cell));
    }
  }

  if (out.format == "json") {
    OrderedJson root = OrderedJson::object();
    root["function"] = fn;
    OrderedJson axes = OrderedJson::array();
    for (const auto& sw : sweeps) {
      OrderedJson a = OrderedJson::object();
      a["axis"] = sw.axis;
      OrderedJson vals = OrderedJson::array();
      for (const auto& v : sw.values) vals.push_back(parse_complex(v).real());
      a["values"] = vals;
      axes.push_back(a);
    }
    root["sweeps"] = axes;
    OrderedJson rows = OrderedJson::array();
    for (const auto& c : cells) {
      OrderedJson r = OrderedJson::object();
      r[outer.axis] = json_complex(parse_complex(c.v0));
      if (!inner.axis.empty()) r[inner.axis] = json_complex(parse_complex(c.v1));
      r["value"] = json_complex(c.ev.value);
      r["terminated"] = c.ev.terminated;
      r["converged"] = c.ev.converged;
      if (c.diverged) r["diverged"] = true;
      rows.push_back(r);
    }
    root["cells"] = rows;
    std::cout << write_canonical_json(root);
  } else {
    std::cout << outer.axis;
    if (!inner.axis.empty()) std::cout << ',' << inner.axis;
    std::cout << ",value_re,value_im,terminated,converged,diverged\n";
    for (const auto& c : cells) {
      std::cout << c.v0;
      if (!inner.axis.empty()) std::cout << ',' << c.v1;
      std::cout << ',' << fmt17(c.ev.value.real()) << ',' << fmt17(c.ev.value.imag()) << ','
                << (c.ev.terminated ? 1 : 0) << ',' << (c.ev.converged ? 1 : 0) << ','
                << (c.diverged ? 1 : 0) << '\n';
    }
  }
  return any_diverged ? kExitDiverged : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"discrete Appell F3 toolkit"};
  app.require_subcommand(1);

  OutputOpts out;
  int max_m = 0, max_n = 0, window = 0;
  double tol = 0.0;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--format", out.format, "json|csv|plain")
        ->check(CLI::IsMember({"json", "csv", "plain"}));
    cmd->add_option("--max-m", max_m);
    cmd->add_option("--max-n", max_n);
    cmd->add_option("--tol", tol);
    cmd->add_option("--window", window);
  };

  std::string fn;
  ParamFlags pf;
  CLI::App* eval_cmd = app.add_subcommand("eval", "evaluate one function at one point");
  eval_cmd->add_option("function", fn, "f3|f3d1|f3d2|kdf|xi11|xi21|xi12|xi22|1f0d")->required();
  add_param_flags(eval_cmd, pf);
  add_common(eval_cmd);

  std::string group = "all", panel_path;
  bool no_exact = false;
  CLI::App* check_cmd = app.add_subcommand("check", "run the identity suite");
  check_cmd->add_option("--group", group, "group name or all");
  check_cmd->add_option("--panel", panel_path, "JSON panel file");
  check_cmd->add_flag("--no-exact", no_exact, "skip exact rational re-checks");
  add_common(check_cmd);

  std::string list_group = "all";
  CLI::App* list_cmd = app.add_subcommand("list", "list catalog identities");
  list_cmd->add_option("--group", list_group);
  add_common(list_cmd);

  std::string table_fn;
  std::vector<std::string> sweeps;
  ParamFlags table_pf;
  CLI::App* table_cmd = app.add_subcommand("table", "tabulate one function over 1-2 axes");
  table_cmd->add_option("function", table_fn)->required();
  table_cmd->add_option("--sweep", sweeps, "axis=v1,v2,... (repeatable, max 2)");
  add_param_flags(table_cmd, table_pf);
  add_common(table_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    const TruncationPolicy pol = policy_from_env_and_flags(max_m, max_n, tol, window);
    if (eval_cmd->parsed()) {
      try {
        const Evaluation ev = eval_function(fn, pf, pol);
        print_evaluation(fn, ev, false, out);
        return ev.converged || ev.terminated ? kExitOk : kExitDiverged;
      } catch (const DivergenceDetected& e) {
        print_evaluation(fn, e.partial, true, out);
        return kExitDiverged;
      }
    }
    if (check_cmd->parsed()) return cmd_check(group, panel_path, out, pol, !no_exact);
    if (list_cmd->parsed()) return cmd_list(list_group, out);
    if (table_cmd->parsed()) return cmd_table(table_fn, table_pf, sweeps, out, pol);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code;
  } catch (const PoleError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const ValidityError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitUsage;
}
