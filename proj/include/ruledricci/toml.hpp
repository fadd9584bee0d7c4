#pragma once

#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace rr::toml {

/// Reader for the TOML subset used by curve-definition and scene files:
/// [section] and [section.sub] headers, bare keys, strings, numbers,
/// booleans, arrays of numbers, and '#' comments.
class Value;
using Table = std::map<std::string, Value>;

class Value {
public:
    using Storage = std::variant<double, bool, std::string, std::vector<double>, Table>;

    Value() : v_(0.0) {}
    explicit Value(Storage v) : v_(std::move(v)) {}

    bool is_number() const { return std::holds_alternative<double>(v_); }
    bool is_bool() const { return std::holds_alternative<bool>(v_); }
    bool is_string() const { return std::holds_alternative<std::string>(v_); }
    bool is_array() const { return std::holds_alternative<std::vector<double>>(v_); }
    bool is_table() const { return std::holds_alternative<Table>(v_); }

    double as_number() const;
    bool as_bool() const;
    const std::string& as_string() const;
    const std::vector<double>& as_array() const;
    const Table& as_table() const;
    Table& as_table();

private:
    Storage v_;
};

Table parse(std::string_view text);
Table parse_file(const std::string& path);

/// Lookup helpers returning defaults when a key path (e.g. "grid.n_t") is
/// absent; throw ValidationError on type mismatches.
const Value* find(const Table& root, const std::string& dotted_key);
double number_or(const Table& root, const std::string& dotted_key, double fallback);
bool bool_or(const Table& root, const std::string& dotted_key, bool fallback);
std::string string_or(const Table& root, const std::string& dotted_key,
                      const std::string& fallback);

}  // namespace rr::toml
