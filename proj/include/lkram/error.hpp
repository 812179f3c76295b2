#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lkram {

enum class Errc {
    InvalidParams,
    UndefinedTransform,
    EmptyInput,
    UndefinedForKind,
    NoIdentity,
    RegionRequiresPositiveEll,
    ArityMismatch,
    ZeroPolynomial,
    NonIntegerCoefficients,
    BoundExhausted,
    NotInjective,
    DegenerateElement,
    SequenceMismatch,
    DomainIncompatible,
    MalformedCertificate,
    BudgetExhausted,
};

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::InvalidParams: return "InvalidParams";
        case Errc::UndefinedTransform: return "UndefinedTransform";
        case Errc::EmptyInput: return "EmptyInput";
        case Errc::UndefinedForKind: return "UndefinedForKind";
        case Errc::NoIdentity: return "NoIdentity";
        case Errc::RegionRequiresPositiveEll: return "RegionRequiresPositiveEll";
        case Errc::ArityMismatch: return "ArityMismatch";
        case Errc::ZeroPolynomial: return "ZeroPolynomial";
        case Errc::NonIntegerCoefficients: return "NonIntegerCoefficients";
        case Errc::BoundExhausted: return "BoundExhausted";
        case Errc::NotInjective: return "NotInjective";
        case Errc::DegenerateElement: return "DegenerateElement";
        case Errc::SequenceMismatch: return "SequenceMismatch";
        case Errc::DomainIncompatible: return "DomainIncompatible";
        case Errc::MalformedCertificate: return "MalformedCertificate";
        case Errc::BudgetExhausted: return "BudgetExhausted";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& msg)
        : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

/// Thrown by bounded witness search when no threshold table fits under the
/// probe bound; carries the probe tuple that failed.
class BoundExhaustedError : public Error {
public:
    BoundExhaustedError(std::vector<unsigned> counterexample, const std::string& msg)
        : Error(Errc::BoundExhausted, msg), counterexample_(std::move(counterexample)) {}

    const std::vector<unsigned>& counterexample() const noexcept { return counterexample_; }

private:
    std::vector<unsigned> counterexample_;
};

/// Strict-mode rejection of a configuration element whose transform lands in
/// {0, 1, -1}; carries the offending position.
class DegenerateElementError : public Error {
public:
    DegenerateElementError(std::size_t index, const std::string& msg)
        : Error(Errc::DegenerateElement, msg), index_(index) {}

    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

}  // namespace lkram
