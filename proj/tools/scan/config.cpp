// SPDX-License-Identifier: Apache-2.0

#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <set>

#include <fmt/format.h>

#include "mfunclab/error.hpp"

namespace mfunclab::cli {

namespace {

void require_object(const json& j, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
}

void check_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
  require_object(j, where);
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, _] : j.items()) {
    if (!ok.count(key)) throw ConfigError(fmt::format("{}: unknown key '{}'", where, key));
  }
}

const json& required(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw ConfigError(fmt::format("{}: missing '{}'", where, key));
  return j.at(key);
}

double get_number(const json& j, const std::string& where) {
  if (!j.is_number()) throw ConfigError(where + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ConfigError(where + ": must be finite");
  return v;
}

std::size_t get_count(const json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    throw ConfigError(where + ": expected a non-negative integer");
  }
  return j.get<std::size_t>();
}

double number_or(const json& j, const char* key, double fallback, const std::string& where) {
  return j.contains(key) ? get_number(j.at(key), where + "." + key) : fallback;
}

std::vector<double> get_reals(const json& j, const std::string& where) {
  if (!j.is_array()) throw ConfigError(where + ": expected an array");
  std::vector<double> out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    out.push_back(get_number(j[k], fmt::format("{}[{}]", where, k)));
  }
  return out;
}

std::vector<int> get_selector(const json& j, const std::string& where) {
  if (!j.is_array()) throw ConfigError(where + ": expected an array of 0/1");
  std::vector<int> out;
  for (const auto& v : j) {
    if (!v.is_number_integer() || (v.get<int>() != 0 && v.get<int>() != 1)) {
      throw ConfigError(where + ": selector entries must be 0 or 1");
    }
    out.push_back(v.get<int>());
  }
  return out;
}

// Square matrix given as rows or flattened row-major. A list whose entries are
// all lists of the outer length is read as rows.
CMatrix get_square(const json& j, const std::string& where) {
  if (!j.is_array()) throw ConfigError(where + ": expected an array");
  if (j.empty()) return CMatrix();
  const std::size_t outer = j.size();
  const bool rows = std::all_of(j.begin(), j.end(), [&](const json& r) {
    return r.is_array() && r.size() == outer;
  });
  std::vector<Complex> flat;
  if (rows) {
    for (std::size_t r = 0; r < outer; ++r) {
      for (std::size_t c = 0; c < outer; ++c) {
        flat.push_back(parse_complex(j[r][c], fmt::format("{}[{}][{}]", where, r, c)));
      }
    }
    return CMatrix(outer, outer, std::move(flat));
  }
  for (std::size_t k = 0; k < outer; ++k) {
    flat.push_back(parse_complex(j[k], fmt::format("{}[{}]", where, k)));
  }
  const auto n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(flat.size()))));
  if (n * n != flat.size()) throw ConfigError(where + ": entry count is not a perfect square");
  return CMatrix(n, n, std::move(flat));
}

Range parse_range(const json& j, const std::string& where) {
  check_keys(j, where, {"min", "max", "n"});
  Range r;
  r.min = get_number(required(j, "min", where), where + ".min");
  r.max = j.contains("max") ? get_number(j.at("max"), where + ".max") : r.min;
  r.n = j.contains("n") ? get_count(j.at("n"), where + ".n") : 1;
  return r;
}

}  // namespace

std::vector<double> Range::values() const {
  std::vector<double> out;
  for (std::size_t k = 0; k < n; ++k) {
    out.push_back(n == 1 ? min : min + (max - min) * static_cast<double>(k) / static_cast<double>(n - 1));
  }
  return out;
}

Complex parse_complex(const json& j, const std::string& where) {
  if (j.is_number()) return {get_number(j, where), 0.0};
  if (j.is_array() && j.size() == 2) {
    return {get_number(j[0], where + "[0]"), get_number(j[1], where + "[1]")};
  }
  throw ConfigError(where + ": expected a number or [re, im]");
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

odelab::SmoothFunction parse_function(const json& desc, const std::string& where) {
  require_object(desc, where);
  const json& type = required(desc, "type", where);
  if (!type.is_string()) throw ConfigError(where + ".type: expected a string");
  const std::string t = type.get<std::string>();
  try {
    if (t == "poly") {
      check_keys(desc, where, {"type", "coeffs"});
      const json& cs = required(desc, "coeffs", where);
      if (!cs.is_array() || cs.empty()) throw ConfigError(where + ".coeffs: expected a non-empty array");
      std::vector<Complex> coeffs;
      for (std::size_t k = 0; k < cs.size(); ++k) {
        coeffs.push_back(parse_complex(cs[k], fmt::format("{}.coeffs[{}]", where, k)));
      }
      return odelab::SmoothFunction::polynomial(std::move(coeffs));
    }
    if (t == "trig") {
      check_keys(desc, where, {"type", "terms"});
      const json& ts = required(desc, "terms", where);
      if (!ts.is_array()) throw ConfigError(where + ".terms: expected an array");
      std::vector<odelab::TrigTerm> terms;
      for (std::size_t k = 0; k < ts.size(); ++k) {
        const std::string w = fmt::format("{}.terms[{}]", where, k);
        check_keys(ts[k], w, {"kind", "amp", "freq", "phase"});
        odelab::TrigTerm term;
        const std::string kind = ts[k].value("kind", std::string("cos"));
        if (kind == "cos") {
          term.kind = odelab::TrigTerm::Kind::Cos;
        } else if (kind == "sin") {
          term.kind = odelab::TrigTerm::Kind::Sin;
        } else if (kind == "exp") {
          term.kind = odelab::TrigTerm::Kind::Exp;
        } else {
          throw ConfigError(w + ".kind: expected cos, sin or exp");
        }
        term.amp = ts[k].contains("amp") ? parse_complex(ts[k]["amp"], w + ".amp") : Complex{1.0};
        term.freq = number_or(ts[k], "freq", 0.0, w);
        term.phase = number_or(ts[k], "phase", 0.0, w);
        terms.push_back(term);
      }
      return odelab::SmoothFunction::trig(std::move(terms));
    }
    if (t == "bump_zero") {
      check_keys(desc, where, {"type", "interval", "outside", "width"});
      const std::vector<double> iv = get_reals(required(desc, "interval", where), where + ".interval");
      if (iv.size() != 2) throw ConfigError(where + ".interval: expected [lo, hi]");
      const odelab::SmoothFunction outside =
          desc.contains("outside") ? parse_function(desc["outside"], where + ".outside")
                                   : odelab::SmoothFunction::constant(1.0);
      return odelab::SmoothFunction::bump_zero(iv[0], iv[1], outside,
                                               number_or(desc, "width", 0.05, where));
    }
  } catch (const Error& e) {
    throw ConfigError(fmt::format("{}: {}", where, e.what()));
  }
  throw ConfigError(fmt::format("{}.type: unknown function type '{}'", where, t));
}

odelab::Coefficients parse_coefficients(const json& j) {
  check_keys(j, "coefficients", {"a", "b", "c"});
  return {parse_function(required(j, "a", "coefficients"), "coefficients.a"),
          parse_function(required(j, "b", "coefficients"), "coefficients.b"),
          parse_function(required(j, "c", "coefficients"), "coefficients.c")};
}

triplet::BoundaryRealization parse_realization(const json& j) {
  require_object(j, "realization");
  const json& type = required(j, "type", "realization");
  if (!type.is_string()) throw ConfigError("realization.type: expected a string");
  const std::string t = type.get<std::string>();
  try {
    if (t == "matrixB") {
      check_keys(j, "realization", {"type", "entries"});
      CMatrix b = get_square(required(j, "entries", "realization"), "realization.entries");
      if (b.empty()) throw ConfigError("realization.entries: empty matrix");
      return triplet::BoundaryRealization::matrix(std::move(b));
    }
    if (t == "subspace") {
      check_keys(j, "realization", {"type", "selX", "selY", "L1"});
      auto sx = get_selector(required(j, "selX", "realization"), "realization.selX");
      auto sy = get_selector(required(j, "selY", "realization"), "realization.selY");
      CMatrix l1 = j.contains("L1") ? get_square(j["L1"], "realization.L1") : CMatrix();
      return triplet::BoundaryRealization::subspace(std::move(sx), std::move(sy), std::move(l1));
    }
  } catch (const Error& e) {
    throw ConfigError(fmt::format("realization: {}", e.what()));
  }
  throw ConfigError(fmt::format("realization.type: unknown type '{}'", t));
}

ScanConfig parse_config(const json& j) {
  check_keys(j, "config", {"schema", "coefficients", "realization", "window", "grid_n",
                           "tolerances", "output", "twins", "krein", "halfspace", "seed"});
  const json& schema = required(j, "schema", "config");
  if (!schema.is_string() || schema.get<std::string>() != kSchema) {
    throw ConfigError(fmt::format("config.schema: expected '{}'", kSchema));
  }
  ScanConfig cfg;
  if (j.contains("coefficients")) {
    cfg.coefficients_descriptor = j["coefficients"];
    cfg.coefficients = parse_coefficients(j["coefficients"]);
  }
  if (j.contains("realization")) {
    cfg.realization_descriptor = j["realization"];
    cfg.realization = parse_realization(j["realization"]);
  } else {
    cfg.realization_descriptor = {{"type", "matrixB"}, {"entries", {{0, 0}, {0, 0}}}};
    cfg.realization = triplet::BoundaryRealization::neumann(2);
  }
  if (cfg.realization->dimension() != 2) {
    throw ConfigError("realization: the boundary space has dimension 2");
  }
  if (j.contains("window")) {
    const json& w = j["window"];
    check_keys(w, "window", {"re_min", "re_max", "im_min", "im_max", "n_re", "n_im"});
    triplet::LambdaWindow win;
    win.re_min = get_number(required(w, "re_min", "window"), "window.re_min");
    win.re_max = number_or(w, "re_max", win.re_min, "window");
    win.im_min = number_or(w, "im_min", 0.0, "window");
    win.im_max = number_or(w, "im_max", win.im_min, "window");
    win.n_re = w.contains("n_re") ? get_count(w["n_re"], "window.n_re") : 1;
    win.n_im = w.contains("n_im") ? get_count(w["n_im"], "window.n_im") : 1;
    if (win.n_re < 1 || win.n_im < 1) throw ConfigError("window: n_re and n_im must be >= 1");
    if (win.re_max < win.re_min || win.im_max < win.im_min) {
      throw ConfigError("window: max below min");
    }
    cfg.window = win;
  }
  if (j.contains("grid_n")) {
    cfg.grid_n = get_count(j["grid_n"], "grid_n");
  }
  if (cfg.grid_n < 5 || cfg.grid_n % 2 == 0) throw ConfigError("grid_n must be odd and >= 5");
  if (j.contains("tolerances")) {
    const json& t = j["tolerances"];
    check_keys(t, "tolerances",
               {"ivp_tol", "den_eps", "tube_eps", "flag_rel", "tol_linear", "cond_cap"});
    Tolerances& tol = cfg.tolerances;
    tol.ivp_tol = number_or(t, "ivp_tol", tol.ivp_tol, "tolerances");
    tol.den_eps = number_or(t, "den_eps", tol.den_eps, "tolerances");
    tol.tube_eps = number_or(t, "tube_eps", tol.tube_eps, "tolerances");
    tol.flag_rel = number_or(t, "flag_rel", tol.flag_rel, "tolerances");
    tol.tol_linear = number_or(t, "tol_linear", tol.tol_linear, "tolerances");
    tol.cond_cap = number_or(t, "cond_cap", tol.cond_cap, "tolerances");
    if (!(tol.ivp_tol > 0 && tol.den_eps > 0 && tol.tube_eps >= 0 && tol.flag_rel > 0 &&
          tol.tol_linear > 0 && tol.cond_cap > 1)) {
      throw ConfigError("tolerances: values must be positive");
    }
  }
  if (j.contains("output")) {
    const json& o = j["output"];
    check_keys(o, "output", {"csv", "summary", "twins", "krein", "halfspace"});
    auto path = [&](const char* key, std::string& dst) {
      if (!o.contains(key)) return;
      if (!o[key].is_string() || o[key].get<std::string>().empty()) {
        throw ConfigError(fmt::format("output.{}: expected a file name", key));
      }
      dst = o[key].get<std::string>();
    };
    path("csv", cfg.output.csv);
    path("summary", cfg.output.summary);
    path("twins", cfg.output.twins);
    path("krein", cfg.output.krein);
    path("halfspace", cfg.output.halfspace);
  }
  if (j.contains("twins")) {
    const json& t = j["twins"];
    check_keys(t, "twins", {"interval", "bump_height", "hausdorff_threshold", "m_tol"});
    TwinsSection tw;
    const std::vector<double> iv = get_reals(required(t, "interval", "twins"), "twins.interval");
    if (iv.size() != 2) throw ConfigError("twins.interval: expected [lo, hi]");
    tw.x_lo = iv[0];
    tw.x_hi = iv[1];
    tw.bump_height = parse_complex(required(t, "bump_height", "twins"), "twins.bump_height");
    tw.hausdorff_threshold = number_or(t, "hausdorff_threshold", tw.hausdorff_threshold, "twins");
    tw.m_tol = number_or(t, "m_tol", tw.m_tol, "twins");
    cfg.twins = tw;
  }
  if (j.contains("krein")) {
    const json& k = j["krein"];
    check_keys(k, "krein", {"lambdas", "trials", "tol"});
    KreinSection kr;
    const json& ls = required(k, "lambdas", "krein");
    if (!ls.is_array()) throw ConfigError("krein.lambdas: expected an array");
    for (std::size_t i = 0; i < ls.size(); ++i) {
      kr.lambdas.push_back(parse_complex(ls[i], fmt::format("krein.lambdas[{}]", i)));
    }
    if (k.contains("trials")) kr.trials = get_count(k["trials"], "krein.trials");
    kr.tol = number_or(k, "tol", kr.tol, "krein");
    cfg.krein = kr;
  }
  if (j.contains("halfspace")) {
    const json& h = j["halfspace"];
    check_keys(h, "halfspace", {"rho", "arg_mu", "abs_mu", "bvec", "direction", "c"});
    HalfspaceSection hs;
    hs.rho = parse_range(required(h, "rho", "halfspace"), "halfspace.rho");
    hs.arg_mu = parse_range(required(h, "arg_mu", "halfspace"), "halfspace.arg_mu");
    hs.abs_mu = parse_range(required(h, "abs_mu", "halfspace"), "halfspace.abs_mu");
    if (h.contains("bvec")) hs.bvec = get_reals(h["bvec"], "halfspace.bvec");
    if (h.contains("direction")) hs.direction = get_reals(h["direction"], "halfspace.direction");
    if (h.contains("c")) hs.c = parse_complex(h["c"], "halfspace.c");
    if (hs.c && !hs.bvec.empty()) throw ConfigError("halfspace: give either c or bvec, not both");
    cfg.halfspace = hs;
  }
  if (j.contains("seed")) cfg.seed = get_count(j["seed"], "seed");
  return cfg;
}

ScanConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open config '{}'", path));
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(fmt::format("{}: {}", path, e.what()));
  }
  return parse_config(j);
}

}  // namespace mfunclab::cli
