#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace ccrank {

enum class Errc {
  DimensionMismatch,
  NotSurjective,
  ResourceCap,
  CapExceeded,
  UnknownName,
  SpanMismatch,
  OrderTooLow,
  NotHomogeneous,
  ConstantRankViolated,
  InclusionViolated,
  BadSize,
  UnderResolved,
  CompatibilityViolated,
  NotSpanning,
  KernelMembershipViolated,
  ResidualTooLarge,
  MeanNotInImage,
  NotAnnihilator,
  OrderNotSupported,
  NoWitness,
  ParseError,
  InternalError,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

// carries the numeric counterexample (xi, v) as strings so the header stays light
class InclusionError : public Error {
 public:
  InclusionError(const std::string& what, std::vector<std::string> xi, std::vector<std::string> v)
      : Error(Errc::InclusionViolated, what), xi_(std::move(xi)), v_(std::move(v)) {}
  const std::vector<std::string>& xi() const { return xi_; }
  const std::vector<std::string>& v() const { return v_; }

 private:
  std::vector<std::string> xi_, v_;
};

class CapError : public Error {
 public:
  CapError(const std::string& what, int variable, int cap)
      : Error(Errc::CapExceeded, what), variable_(variable), cap_(cap) {}
  int variable() const { return variable_; }
  int cap() const { return cap_; }

 private:
  int variable_;
  int cap_;
};

[[noreturn]] inline void fail(Errc c, const std::string& msg) { throw Error(c, msg); }

inline void require(bool cond, Errc c, const std::string& msg) {
  if (!cond) fail(c, msg);
}

}  // namespace ccrank
