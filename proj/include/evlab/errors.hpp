#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace evlab {

/// Base for all workbench errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Formula text did not conform to the grammar.
struct ParseError : Error {
  ParseError(std::string msg, std::size_t at, std::vector<std::string> want)
      : Error(std::move(msg)), offset(at), expected(std::move(want)) {}

  std::size_t offset;                  // byte offset into the input
  std::vector<std::string> expected;   // token spellings that would have been accepted
};

/// A model document failed to parse or violated a structural invariant.
/// `path` points into the document (e.g. "interpretation.e.a[2]").
struct ModelError : Error {
  ModelError(std::string msg, std::string where = {})
      : Error(std::move(msg)), path(std::move(where)) {}

  std::string path;
};

/// Semantic misuse: evaluating outside a scenario, missing belief set,
/// operator outside the model class, and the like.
struct EvalError : Error {
  using Error::Error;
};

}  // namespace evlab
