#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cvss {

// Base class for every error raised by the library. The CLI maps any Error to
// exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised by parse_vector. `token` is the offending KEY:V pair (or the raw
// fragment when the structure is broken) and `position` its 0-based offset
// within the input after any surrounding parentheses were removed.
class VectorError : public Error {
 public:
  VectorError(const std::string& what, std::string token, std::size_t position)
      : Error(what), token_(std::move(token)), position_(position) {}

  const std::string& token() const noexcept { return token_; }
  std::size_t position() const noexcept { return position_; }

 private:
  std::string token_;
  std::size_t position_;
};

class MalformedVector : public VectorError {
 public:
  using VectorError::VectorError;
};

class UnknownMetricValue : public VectorError {
 public:
  using VectorError::VectorError;
};

class InvalidLambda : public Error {
 public:
  using Error::Error;
};

class MalformedFeed : public Error {
 public:
  using Error::Error;
};

class MalformedCsv : public Error {
 public:
  using Error::Error;
};

class UnclassifiableScope : public Error {
 public:
  using Error::Error;
};

class CorpusIoError : public Error {
 public:
  using Error::Error;
};

class CorpusVersionMismatch : public Error {
 public:
  using Error::Error;
};

class EmptySubset : public Error {
 public:
  using Error::Error;
};

class UnknownCve : public Error {
 public:
  using Error::Error;
};

class UnresolvedScope : public Error {
 public:
  explicit UnresolvedScope(std::vector<std::string> cves);

  const std::vector<std::string>& cves() const noexcept { return cves_; }

 private:
  std::vector<std::string> cves_;
};

}  // namespace cvss
