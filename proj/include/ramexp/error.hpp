#pragma once

#include <stdexcept>
#include <string>

namespace ramexp {

// Everything the CLI maps to exit status 2 derives from UsageError.
class UsageError : public std::runtime_error {
public:
    UsageError(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

class DomainError : public UsageError {
public:
    explicit DomainError(const std::string& what) : UsageError("domain", what) {}
};

class PreconditionError : public UsageError {
public:
    PreconditionError(std::string condition, const std::string& what)
        : UsageError("precondition", what), condition_(std::move(condition)) {}
    const std::string& condition() const { return condition_; }

private:
    std::string condition_;
};

class ParseError : public UsageError {
public:
    explicit ParseError(const std::string& what) : UsageError("parse", what) {}
};

class ResourceError : public UsageError {
public:
    explicit ResourceError(const std::string& what) : UsageError("resource", what) {}
};

class FinitenessNotProvable : public UsageError {
public:
    explicit FinitenessNotProvable(const std::string& what)
        : UsageError("finiteness_not_provable", what) {}
};

class NotMultiplicative : public UsageError {
public:
    explicit NotMultiplicative(const std::string& what)
        : UsageError("not_multiplicative", what) {}
};

class UnsupportedBranch : public UsageError {
public:
    explicit UnsupportedBranch(const std::string& what)
        : UsageError("unsupported_branch", what) {}
};

class NotGrowing : public UsageError {
public:
    explicit NotGrowing(const std::string& what) : UsageError("not_growing", what) {}
};

}  // namespace ramexp
