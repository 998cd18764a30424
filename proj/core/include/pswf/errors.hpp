#pragma once

#include <stdexcept>
#include <string>

namespace pswf {

// Single exception taxonomy; `code` values are stable API (they surface in CLI
// --json-errors output and exit-code mapping).
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

namespace errc {
inline constexpr const char* NotCoprime = "NotCoprime";
inline constexpr const char* TooFewFibers = "TooFewFibers";
inline constexpr const char* InvalidSeifertPair = "InvalidSeifertPair";
inline constexpr const char* NotBlowdownable = "NotBlowdownable";
inline constexpr const char* NotNegativeDefinite = "NotNegativeDefinite";
inline constexpr const char* NotSelfConjugate = "NotSelfConjugate";
inline constexpr const char* RegionTooLarge = "RegionTooLarge";
inline constexpr const char* TruncationTooSmall = "TruncationTooSmall";
inline constexpr const char* NotAPath = "NotAPath";
inline constexpr const char* VerificationFailed = "VerificationFailed";
inline constexpr const char* GradingCosetMismatch = "GradingCosetMismatch";
inline constexpr const char* CertificationFailed = "CertificationFailed";
inline constexpr const char* CutTooHigh = "CutTooHigh";
inline constexpr const char* NotSymmetric = "NotSymmetric";
inline constexpr const char* InconsistentDirections = "InconsistentDirections";
inline constexpr const char* NotTypeSWF = "NotTypeSWF";
inline constexpr const char* HypothesisViolated = "HypothesisViolated";
inline constexpr const char* NotNormalized = "NotNormalized";
inline constexpr const char* NotProjective = "NotProjective";
inline constexpr const char* ExactHypothesisViolated = "ExactHypothesisViolated";
inline constexpr const char* ParseError = "ParseError";
inline constexpr const char* ValidationError = "ValidationError";
inline constexpr const char* Internal = "Internal";
} // namespace errc

[[noreturn]] inline void fail(const char* code, const std::string& what) { throw Error(code, what); }

} // namespace pswf
