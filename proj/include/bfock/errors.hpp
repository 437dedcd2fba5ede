#ifndef BFOCK_ERRORS_HPP
#define BFOCK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bfock
{

// Precondition on an argument violated (bad index, degree mismatch, wrong family).
class DomainError : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

// Request exceeds a hard enumeration/materialization bound.
class ResourceError : public std::length_error
{
public:
    using std::length_error::length_error;
};

// Numeric routine could not produce a trustworthy value.
class NumericError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

inline void require_domain(bool cond, const std::string &msg)
{
    if (!cond) {
        throw DomainError(msg);
    }
}

inline void require_bound(bool cond, const std::string &msg)
{
    if (!cond) {
        throw ResourceError(msg);
    }
}

} // namespace bfock

#endif
