#pragma once

#include <stdexcept>
#include <string>

namespace obt {

// Base class for all engine errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Category document does not conform to the schema (missing/duplicate ids,
// dangling references, malformed entries).
struct SchemaError : Error {
    using Error::Error;
};

// compose(f, g) requested with dst(f) != src(g), or a hole in the table.
struct NotComposable : Error {
    using Error::Error;
};

// The cospan has no entry in the pullback table. Operations that need the
// fiber product abort with this instead of inventing objects.
struct PullbackUnavailable : Error {
    using Error::Error;
};

struct NotConfined : Error {
    using Error::Error;
};

struct NotSpecialized : Error {
    using Error::Error;
};

struct NotIndependent : Error {
    using Error::Error;
};

struct UnknownLabel : Error {
    using Error::Error;
};

// An orientation operator was required but the target theory has none.
struct MissingOrientationData : Error {
    using Error::Error;
};

// Expression DSL errors.
struct ParseError : Error {
    using Error::Error;
};

struct ResolveError : Error {
    using Error::Error;
};

struct ContextError : Error {
    using Error::Error;
};

// Evaluation-time failure not covered by the more specific types.
struct EvalError : Error {
    using Error::Error;
};

}  // namespace obt
