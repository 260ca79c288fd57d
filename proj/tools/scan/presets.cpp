// SPDX-License-Identifier: Apache-2.0

#include "presets.hpp"

#include <numbers>

#include <fmt/format.h>

namespace mfunclab::cli {

namespace {

json poly(json coeffs) { return {{"type", "poly"}, {"coeffs", std::move(coeffs)}}; }

json decoupled() {
  return {
      {"schema", kSchema},
      {"coefficients", {{"a", poly({0})}, {"b", poly({0})}, {"c", poly({0})}}},
      {"realization", {{"type", "matrixB"}, {"entries", {{0, 0}, {0, 0}}}}},
      {"window",
       {{"re_min", -2.0}, {"re_max", 50.0}, {"im_min", -0.1}, {"im_max", 0.1}, {"n_re", 1041},
        {"n_im", 3}}},
      {"grid_n", 4001},
      {"krein", {{"lambdas", {-1.0}}, {"trials", 5}}},
  };
}

// Mildly varying complex coefficients, ran(ab + c) near 2..3.3 + 0.6i.
json generic() {
  const json b = {{"type", "trig"},
                  {"terms",
                   {{{"kind", "cos"}, {"amp", 0.4}, {"freq", std::numbers::pi}},
                    {{"kind", "cos"}, {"amp", {0.0, 0.2}}, {"freq", 0.0}}}}};
  return {
      {"schema", kSchema},
      {"coefficients",
       {{"a", poly({0.5, {0.3, 0.1}})}, {"b", b}, {"c", poly({{2.0, 0.5}, 1.0})}}},
      {"realization",
       {{"type", "matrixB"}, {"entries", {{0.5, {0.0, 0.2}}, {{0.0, 0.2}, -0.3}}}}},
      {"window",
       {{"re_min", -10.0}, {"re_max", 60.0}, {"im_min", -2.0}, {"im_max", 2.0}, {"n_re", 141},
        {"n_im", 9}}},
      {"grid_n", 4001},
      {"krein",
       {{"lambdas", {-1.0, {-2.0, 0.5}, {1.0, 1.0}, {-0.5, -1.0}, {4.0, -1.5}}}, {"trials", 3}}},
  };
}

// b vanishes on (0.4, 0.6); raising c there moves ran(ab + c) but not M.
json counterexample() {
  return {
      {"schema", kSchema},
      {"coefficients",
       {{"a", poly({{0.0, 1.0}})},
        {"b", {{"type", "bump_zero"}, {"interval", {0.4, 0.6}}, {"outside", poly({1.0})}}},
        {"c", poly({0.0, 1.0})}}},
      {"realization", {{"type", "matrixB"}, {"entries", {{0, 0}, {0, 0}}}}},
      {"window",
       {{"re_min", -4.0}, {"re_max", 4.0}, {"im_min", -2.0}, {"im_max", 2.0}, {"n_re", 41},
        {"n_im", 21}}},
      {"grid_n", 4001},
      {"twins", {{"interval", {0.4, 0.6}}, {"bump_height", 1.0}}},
  };
}

}  // namespace

std::vector<std::string> preset_names() { return {"decoupled", "generic", "counterexample"}; }

json preset_config(std::string_view name) {
  if (name == "decoupled") return decoupled();
  if (name == "generic") return generic();
  if (name == "counterexample") return counterexample();
  throw ConfigError(fmt::format("unknown preset '{}'", name));
}

}  // namespace mfunclab::cli
