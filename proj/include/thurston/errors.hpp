#pragma once

#include <stdexcept>
#include <string>

namespace thurston {

struct SchemaError : std::runtime_error {
    explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

struct DegenerateRule : std::runtime_error {
    explicit DegenerateRule(const std::string& what) : std::runtime_error(what) {}
};

struct InconsistentRule : std::runtime_error {
    explicit InconsistentRule(const std::string& what) : std::runtime_error(what) {}
};

struct GluingError : std::runtime_error {
    explicit GluingError(const std::string& what) : std::runtime_error(what) {}
};

struct LevelUnavailable : std::runtime_error {
    explicit LevelUnavailable(const std::string& what) : std::runtime_error(what) {}
};

struct DepthExhausted : std::runtime_error {
    explicit DepthExhausted(const std::string& what) : std::runtime_error(what) {}
};

struct DepthBudgetExceeded : std::runtime_error {
    explicit DepthBudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct ExpansionNotEstablished : std::runtime_error {
    explicit ExpansionNotEstablished(const std::string& what) : std::runtime_error(what) {}
};

struct PeriodicCriticalPresent : std::runtime_error {
    explicit PeriodicCriticalPresent(const std::string& what) : std::runtime_error(what) {}
};

struct NonGenericBasePoint : std::runtime_error {
    explicit NonGenericBasePoint(const std::string& what) : std::runtime_error(what) {}
};

struct CacheError : std::runtime_error {
    explicit CacheError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace thurston
