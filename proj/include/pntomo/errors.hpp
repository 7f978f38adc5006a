#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pntomo {

struct SingularMatrix : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotHermitian : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegreeCapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidSqueezeParams : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigInvalid : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GridTooCoarse : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed or schema-violating input file; the CLI maps this to exit code 1.
struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Non-fatal diagnostic, e.g. a Fock-space truncation quality warning.
struct Warning {
    std::string code;
    std::string message;
};

struct WarningLog {
    std::vector<Warning> entries;

    void add(std::string code, std::string message) {
        entries.push_back({std::move(code), std::move(message)});
    }
    bool empty() const { return entries.empty(); }
};

/// Appends to `log` when a sink is attached; ops stay pure otherwise.
inline void warn(WarningLog* log, const char* code, std::string message) {
    if (log != nullptr) log->add(code, std::move(message));
}

}  // namespace pntomo
