#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "dsfm/core.hpp"
#include "dsfm/solver.hpp"

namespace dsfm {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

struct ParsedProblem {
  Decomposition decomposition;
  std::vector<std::string> warnings;
};

/// Problem text format, 1-based ids, '#' starts a comment:
///   dsfm v1 N=<int> tau=<real>
///   edge u v w
///   hyperedge w v1 v2 ...
///   region v1 v2 ...
///   table w <2^k values> v1 ... vk
///   edges u1 v1 w1 [u2 v2 w2 ...]
///   x0 v value
ParsedProblem parse_problem(std::istream& in);
ParsedProblem read_problem(const std::filesystem::path& path);
void write_problem(std::ostream& out, const Decomposition& d);
void write_problem(const std::filesystem::path& path, const Decomposition& d);

/// Shortest round-trip decimal form.
std::string format_double(double v);

void write_trace(std::ostream& out, const ConvergenceTrace& trace);
void write_trace(const std::filesystem::path& path, const ConvergenceTrace& trace);
ConvergenceTrace read_trace(std::istream& in);

}  // namespace dsfm
