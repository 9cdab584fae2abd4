#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ikit {

/// Result of checking a law. A failing verdict names the first violated law
/// and carries a witness rendered in the caller's element names, never as
/// internal indices.
struct Verdict {
  bool ok = true;
  std::string law;
  std::vector<std::string> witness;

  static Verdict pass() { return {}; }
  static Verdict fail(std::string law, std::vector<std::string> witness) {
    return Verdict{false, std::move(law), std::move(witness)};
  }

  explicit operator bool() const noexcept { return ok; }

  std::string to_string() const {
    if (ok) return "pass";
    std::string out = law + "(";
    for (std::size_t i = 0; i < witness.size(); ++i) {
      if (i) out += ", ";
      out += witness[i];
    }
    return out + ")";
  }
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A structure handed to a construction violates a law the construction
/// depends on (not a poset, meet not preserved, not Kuratowski, ...).
class LawViolation : public Error {
 public:
  explicit LawViolation(Verdict v)
      : Error(v.to_string()), verdict_(std::move(v)) {}
  LawViolation(std::string law, std::vector<std::string> witness)
      : LawViolation(Verdict::fail(std::move(law), std::move(witness))) {}

  const std::string& law() const noexcept { return verdict_.law; }
  const std::vector<std::string>& witness() const noexcept {
    return verdict_.witness;
  }
  const Verdict& verdict() const noexcept { return verdict_; }

 private:
  Verdict verdict_;
};

/// Arguments that do not fit together: mismatched carriers, unknown names,
/// a subset that is not a subset of the declared set.
class InputError : public Error {
 public:
  InputError(std::string kind, const std::string& detail)
      : Error(kind + ": " + detail), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

/// An exhaustive operation refused to run because its input is above the
/// configured size cap.
class CapExceeded : public Error {
 public:
  CapExceeded(std::string what, std::size_t size, std::size_t cap)
      : Error("CapExceeded(" + what + ", " + std::to_string(size) + " > " +
              std::to_string(cap) + ")"),
        what_(std::move(what)),
        size_(size),
        cap_(cap) {}

  const std::string& what_check() const noexcept { return what_; }
  std::size_t size() const noexcept { return size_; }
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::string what_;
  std::size_t size_;
  std::size_t cap_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::string expected)
      : Error("ParseError(line " + std::to_string(line) + ", expected " +
              expected + ")"),
        line_(line),
        expected_(std::move(expected)) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  std::size_t line_;
  std::string expected_;
};

inline std::string format_set(const std::vector<std::string>& items) {
  std::string out = "{";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ",";
    out += items[i];
  }
  return out + "}";
}

}  // namespace ikit
