#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "netdesign/design.hpp"
#include "netdesign/game.hpp"

namespace netdesign {

// JSON game document:
//   { "n": 3, "g": [[...], ...], "a": [...],
//     "theta": [...],                 (optional)
//     "gamma": {"c": [...], "d": [...]},  (optional; makes it a public-goods game)
//     "upper": [...] }                (optional per-player action bound)
struct GameDocument {
  AdjacencyMatrix g;
  Vector a;
  std::optional<Vector> theta;
  std::optional<Vector> gamma_c;
  std::optional<Vector> gamma_d;
  std::optional<Vector> upper;

  bool is_public_goods() const { return gamma_c.has_value(); }
  NetworkGame network_game() const;
  // theta defaults to zero when absent.
  PublicGoodsGame public_goods_game() const;
};

// Parse failures throw Error(kParse) naming the source plus either the line and
// column of a syntax error or the offending field.
GameDocument parse_game(std::string_view text, std::string_view source = "<input>");
GameDocument read_game_file(const std::string& path);
std::string write_game(const GameDocument& doc);

// Design problem document, 1-based indices:
//   { "n": 3, "a": [1, 2, 3],
//     "fixed": [[1, 2, -2.0], ...],   ([i, j, value])
//     "free": [[2, 1], ...] }          ([i, j])
DesignProblem parse_problem(std::string_view text, std::string_view source = "<input>");
DesignProblem read_problem_file(const std::string& path);
std::string write_problem(const DesignProblem& problem);

// Perturbation direction: { "n": 4, "pattern": [[...], ...] }.
Matrix parse_pattern(std::string_view text, std::string_view source = "<input>");
Matrix read_pattern_file(const std::string& path);

/// Reads a whole file; throws kParse if it cannot be opened.
std::string read_text_file(const std::string& path);

}  // namespace netdesign
