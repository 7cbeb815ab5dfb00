#pragma once

// Canonical JSON rendering: fixed field order, floats printed with 17
// significant digits so that parse -> re-render is byte-identical.

#include <json.hpp>

#include <cstdio>
#include <string>

#include "appell/quadrature.hpp"
#include "appell/suite.hpp"

namespace appell {

using OrderedJson = nlohmann::ordered_json;

namespace report_detail {

inline std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline void escape_string(const std::string& s, std::string& out) {
  out += '"';
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  out += '"';
}

inline void write_value(const OrderedJson& j, std::string& out) {
  switch (j.type()) {
    case nlohmann::detail::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        escape_string(it.key(), out);
        out += ':';
        write_value(it.value(), out);
      }
      out += '}';
      break;
    }
    case nlohmann::detail::value_t::array: {
      out += '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += ',';
        first = false;
        write_value(v, out);
      }
      out += ']';
      break;
    }
    case nlohmann::detail::value_t::string:
      escape_string(j.get_ref<const std::string&>(), out);
      break;
    case nlohmann::detail::value_t::boolean:
      out += j.get<bool>() ? "true" : "false";
      break;
    case nlohmann::detail::value_t::number_integer:
      out += std::to_string(j.get<long long>());
      break;
    case nlohmann::detail::value_t::number_unsigned:
      out += std::to_string(j.get<unsigned long long>());
      break;
    case nlohmann::detail::value_t::number_float:
      out += fmt_double(j.get<double>());
      break;
    default:
      out += "null";
  }
}

}  // namespace report_detail

inline std::string write_canonical_json(const OrderedJson& j) {
  std::string out;
  report_detail::write_value(j, out);
  out += '\n';
  return out;
}

inline OrderedJson json_complex(const Cplx& z) {
  return OrderedJson::array({z.real(), z.imag()});
}

inline OrderedJson json_complex(const ExactScalar& z) { return json_complex(to_cplx(z)); }

inline OrderedJson json_params(const PanelCase& pc) {
  OrderedJson p = OrderedJson::object();
  if (pc.variant == Variant::V1) {
    p["a1"] = json_complex(pc.p1.a1);
    p["a2"] = json_complex(pc.p1.a2);
    p["b1"] = json_complex(pc.p1.b1);
    p["b2"] = json_complex(pc.p1.b2);
    p["c"] = json_complex(pc.p1.c);
    p["t1"] = json_complex(pc.p1.t1);
    p["t2"] = json_complex(pc.p1.t2);
    p["k1"] = pc.p1.k1;
    p["k2"] = pc.p1.k2;
  } else {
    p["a1"] = json_complex(pc.p2.a1);
    p["a2"] = json_complex(pc.p2.a2);
    p["b1"] = json_complex(pc.p2.b1);
    p["b2"] = json_complex(pc.p2.b2);
    p["c"] = json_complex(pc.p2.c);
    p["t"] = json_complex(pc.p2.t);
    p["k"] = pc.p2.k;
  }
  return p;
}

inline OrderedJson json_suite_report(const SuiteReport& rep, const std::vector<PanelCase>& panel) {
  OrderedJson entries = OrderedJson::array();
  for (const auto& e : rep.entries) {
    OrderedJson je = OrderedJson::object();
    je["identity_id"] = e.id;
    je["group"] = group_name(e.group);
    je["paper_eq"] = e.paper_eq;
    if (!e.note.empty()) je["note"] = e.note;
    OrderedJson cases = OrderedJson::array();
    for (const auto& cr : e.cases) {
      OrderedJson jc = OrderedJson::object();
      // locate the panel case by label for the parameter echo
      const PanelCase* pc = nullptr;
      for (const auto& q : panel)
        if (q.label == cr.label) {
          pc = &q;
          break;
        }
      jc["case"] = cr.label;
      if (pc) {
        jc["params"] = json_params(*pc);
        OrderedJson pointj = OrderedJson::object();
        pointj["x"] = json_complex(pc->pt.x);
        pointj["y"] = json_complex(pc->pt.y);
        jc["point"] = pointj;
      }
      if (cr.skipped) {
        jc["skipped"] = true;
        jc["reason"] = cr.msg;
      } else {
        jc["abs"] = cr.abs;
        jc["rel"] = cr.rel;
        jc["pass"] = cr.pass;
        if (cr.exact_zero >= 0) jc["exact_zero"] = cr.exact_zero == 1;
        if (cr.printed_rel >= 0.0) jc["printed_rel"] = cr.printed_rel;
        if (!cr.msg.empty()) jc["msg"] = cr.msg;
      }
      cases.push_back(jc);
    }
    je["cases"] = cases;
    je["pass"] = e.pass;
    entries.push_back(je);
  }
  OrderedJson root = OrderedJson::object();
  root["identities"] = entries;
  OrderedJson summary = OrderedJson::object();
  summary["checked"] = rep.identities_checked;
  summary["passed"] = rep.identities_passed;
  summary["failed"] = rep.identities_failed;
  summary["skipped"] = rep.identities_skipped;
  summary["elapsed_seconds"] = rep.elapsed_seconds;
  root["summary"] = summary;
  return root;
}

inline OrderedJson json_evaluation(const std::string& function, const Evaluation& ev,
                                   bool diverged = false) {
  OrderedJson j = OrderedJson::object();
  j["function"] = function;
  j["value"] = json_complex(ev.value);
  j["terms_used"] = ev.terms_used;
  j["terminated"] = ev.terminated;
  j["converged"] = ev.converged;
  if (std::isfinite(ev.est_error))
    j["est_error"] = ev.est_error;
  else
    j["est_error"] = "inf";
  if (diverged) j["diverged"] = true;
  return j;
}

inline OrderedJson json_quad_results(const std::vector<QuadCaseResult>& results) {
  OrderedJson arr = OrderedJson::array();
  for (const auto& r : results) {
    OrderedJson j = OrderedJson::object();
    j["rep_id"] = r.rep_id;
    j["case"] = r.label;
    if (r.unverifiable) {
      j["unverifiable"] = true;
      j["reason"] = r.msg;
    } else {
      j["rel"] = r.rel;
      j["pass"] = r.pass;
    }
    arr.push_back(j);
  }
  return arr;
}

}  // namespace appell
