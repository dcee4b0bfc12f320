#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace semrerank {

// Root of every data/protocol error raised by the library. The CLI maps
// these to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, std::size_t offset)
      : Error(message + " at offset " + std::to_string(offset)), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class UnboundVariable : public Error {
 public:
  explicit UnboundVariable(const std::string& name)
      : Error("unbound variable " + name), name_(name) {}

  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

class FormalismMismatch : public Error {
 public:
  using Error::Error;
};

class GrammarError : public Error {
 public:
  GrammarError(const std::string& message, std::size_t line)
      : Error("grammar line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class LexiconError : public Error {
 public:
  using Error::Error;
};

class MissingResource : public Error {
 public:
  using Error::Error;
};

class DegenerateCorpus : public Error {
 public:
  using Error::Error;
};

class ScoreRangeError : public Error {
 public:
  using Error::Error;
};

class RemoteProtocolError : public Error {
 public:
  using Error::Error;
};

class RemoteUnavailable : public Error {
 public:
  using Error::Error;
};

class EmptyBeam : public Error {
 public:
  using Error::Error;
};

class InvalidBeam : public Error {
 public:
  using Error::Error;
};

class MissingBeam : public Error {
 public:
  explicit MissingBeam(const std::string& id) : Error("no beam for example " + id), id_(id) {}
  const std::string& id() const noexcept { return id_; }

 private:
  std::string id_;
};

class MissingResult : public Error {
 public:
  explicit MissingResult(const std::string& id) : Error("no result for example " + id), id_(id) {}
  const std::string& id() const noexcept { return id_; }

 private:
  std::string id_;
};

// Malformed input files: bad JSON, missing fields, unreadable paths.
class DataError : public Error {
 public:
  using Error::Error;
};

}  // namespace semrerank
