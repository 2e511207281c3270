#pragma once

// Line-based spec files.
//
//   p: <prime>                          required
//   divisible_rank: <int> | omega       default 0
//   cyclic: <exp>:<mult>[,...]          summands of finite multiplicity
//   cyclic_infinite: <exp>[,...]        exponents repeated infinitely often
//   character: <n>:<k>[,...]            explicit character pairs, must be downward closed
//   sfunction: <i>:<v0>,<v1>,...        row i of an s-function table, rows 0,1,2,... in order;
//                                       the last value repeats forever
//   sfunction_staircase: <offset>       f(i, s) = min(i + offset, s), infinitely many rows
//   inf_mode: computable | sigma1       default computable
//
// Blank lines and text after '#' are ignored.  Each key other than
// sfunction appears at most once.

#include <stdexcept>
#include <string>

#include "pgl/character.hpp"

namespace pgl {

class SpecError : public std::invalid_argument {
 public:
  SpecError(std::size_t line, const std::string& what)
      : std::invalid_argument("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

IsoTypeSpec parse_spec(const std::string& text);
IsoTypeSpec parse_spec_file(const std::string& path);
/// Canonical form; parse_spec(print_spec(t)) prints back identically.
std::string print_spec(const IsoTypeSpec& t);

}  // namespace pgl
