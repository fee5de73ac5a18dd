/**
 * Exception types thrown by the chainlift library.
 *
 * Everything derives from `chainlift::Error`, so callers that only care about
 * success/failure can catch that. The CLI maps `DisconnectedError` to exit
 * code 2 and every other `Error` to exit code 1.
 */
#ifndef CHAINLIFT_ERROR_HPP
#define CHAINLIFT_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace chainlift {

class Error : public std::runtime_error
{
    public:
        using std::runtime_error::runtime_error;
};

/** Precondition or domain violation (bad parameter, mismatched inputs). */
class DomainError : public Error
{
    public:
        using Error::Error;
};

/** Malformed input stream; `line()` is 1-based, 0 when not line-specific. */
class ParseError : public Error
{
    private:
        std::size_t line_;

    public:
        ParseError(std::size_t line, const std::string& what)
            : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
              line_(line)
        {
        }

        std::size_t line() const { return line_; }
};

/** A point sequence that is not a chain at the requested scale. */
class ChainError : public Error
{
    private:
        std::size_t pair_index_;
        std::size_t from_;
        std::size_t to_;

    public:
        ChainError(std::size_t pair_index, std::size_t from, std::size_t to, const std::string& what)
            : Error(what), pair_index_(pair_index), from_(from), to_(to)
        {
        }

        /** Index i such that (points[i], points[i+1]) is the offending pair. */
        std::size_t pairIndex() const { return pair_index_; }
        std::size_t from() const { return from_; }
        std::size_t to() const { return to_; }
};

/** Scale graph is not chain connected where connectivity is required. */
class DisconnectedError : public Error
{
    public:
        using Error::Error;
};

/** A request outside what the library supports (e.g. index above the catalog). */
class UnsupportedError : public Error
{
    public:
        using Error::Error;
};

/** Generator images that do not kill every relator. */
class HomError : public Error
{
    public:
        using Error::Error;
};

/** Subset of a group that is not a normal subgroup. */
class NotNormalError : public Error
{
    public:
        using Error::Error;
};

}   // namespace chainlift

#endif
