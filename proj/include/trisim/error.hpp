#pragma once

#include <stdexcept>
#include <string>

namespace trisim {

enum class Errc {
  ZeroChirality,
  MetallicTube,
  OutOfRange,
  Unresolvable,
  WidthMismatch,
  Overflow,
  WrongArity,
  Syntax,
  UnknownNode,
  UnknownSubckt,
  DuplicateId,
  DanglingPort,
  Semantic,
  Config,
  NonConvergent,
  NoPath,
  Usage,
};

const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

// Netlist diagnostics. Line and column are 1-based.
class ParseError : public Error {
public:
  ParseError(Errc code, int line, int column, const std::string& msg)
      : Error(code, "line " + std::to_string(line) + ", col " + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

private:
  int line_;
  int column_;
};

}  // namespace trisim
