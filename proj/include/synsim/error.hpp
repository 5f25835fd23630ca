#ifndef SYNSIM_ERROR_HPP
#define SYNSIM_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace synsim {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad or missing input data: files, ids, encodings. CLI exit status 2.
class InputError : public Error {
 public:
  using Error::Error;
};

class IoError : public InputError {
 public:
  using InputError::InputError;
};

class DecodeError : public InputError {
 public:
  explicit DecodeError(std::size_t offset, const std::string& where = {})
      : InputError((where.empty() ? std::string() : where + ": ") +
                   "malformed UTF-8 at byte offset " + std::to_string(offset)),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class FormatError : public InputError {
 public:
  FormatError(std::size_t line, const std::string& what)
      : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class LookupError : public InputError {
 public:
  using InputError::InputError;
};

class DuplicateIdError : public InputError {
 public:
  using InputError::InputError;
};

class EmptyCorpusError : public InputError {
 public:
  using InputError::InputError;
};

/// Invalid option combination or unknown names. CLI exit status 64.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// IDF requested for a term with zero document frequency and no smoothing.
class DivisionByZeroError : public Error {
 public:
  explicit DivisionByZeroError(const std::string& term)
      : Error("document frequency of '" + term + "' is zero and smoothing is disabled"),
        term_(term) {}

  const std::string& term() const noexcept { return term_; }

 private:
  std::string term_;
};

}  // namespace synsim

#endif  // SYNSIM_ERROR_HPP
