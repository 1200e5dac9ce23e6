#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace stlcorpus {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed surface syntax. `index()` is the offending token position.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, std::size_t index)
      : Error(message + " (token " + std::to_string(index) + ")"), index_(index) {}

  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A construct was requested from the lexicon but has no phrases.
class LexiconGap : public Error {
 public:
  explicit LexiconGap(const std::string& section)
      : Error("lexicon has no phrases for '" + section + "'"), section_(section) {}

  const std::string& section() const noexcept { return section_; }

 private:
  std::string section_;
};

class LexiconError : public Error {
 public:
  using Error::Error;
};

class UnknownSignal : public Error {
 public:
  explicit UnknownSignal(const std::string& name)
      : Error("unknown signal '" + name + "'"), name_(name) {}

  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

class IndexOutOfRange : public Error {
 public:
  IndexOutOfRange(std::size_t index, std::size_t length)
      : Error("time index " + std::to_string(index) + " outside trace of length " +
              std::to_string(length)) {}
};

/// Malformed vocabulary file or inconsistent merge list.
class VocabError : public Error {
 public:
  using Error::Error;
};

class MetricError : public Error {
 public:
  using Error::Error;
};

class CorpusError : public Error {
 public:
  using Error::Error;
};

/// File or stream failure; the CLI maps it to exit code 2.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace stlcorpus
