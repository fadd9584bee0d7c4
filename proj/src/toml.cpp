#include "ruledricci/toml.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "ruledricci/errors.hpp"

namespace rr::toml {

namespace {

[[noreturn]] void fail(int line, const std::string& message) {
    throw ValidationError("TOML line " + std::to_string(line) + ": " + message);
}

std::string_view strip(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

/// Removes a trailing comment that is not inside a string literal.
std::string_view strip_comment(std::string_view s) {
    bool in_string = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"' && (i == 0 || s[i - 1] != '\\')) in_string = !in_string;
        if (s[i] == '#' && !in_string) return s.substr(0, i);
    }
    return s;
}

bool valid_key(std::string_view k) {
    if (k.empty()) return false;
    for (const char c : k) {
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') return false;
    }
    return true;
}

std::vector<std::string> split_dotted(std::string_view path, int line) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= path.size(); ++i) {
        if (i == path.size() || path[i] == '.') {
            const auto part = strip(path.substr(start, i - start));
            if (!valid_key(part)) fail(line, "invalid key '" + std::string(path) + "'");
            parts.emplace_back(part);
            start = i + 1;
        }
    }
    return parts;
}

double parse_number(std::string_view s, int line) {
    double v = 0.0;
    std::string buf(s);  // from_chars wants contiguous, s already is; keep simple for inf/nan
    const char* begin = buf.data();
    const char* end = buf.data() + buf.size();
    if (!buf.empty() && buf.front() == '+') ++begin;
    const auto res = std::from_chars(begin, end, v);
    if (res.ec != std::errc{} || res.ptr != end) fail(line, "malformed number '" + buf + "'");
    return v;
}

std::string parse_string(std::string_view s, int line) {
    if (s.size() < 2 || s.front() != '"' || s.back() != '"') {
        fail(line, "malformed string " + std::string(s));
    }
    std::string out;
    for (std::size_t i = 1; i + 1 < s.size(); ++i) {
        if (s[i] == '\\' && i + 2 < s.size()) {
            ++i;
            switch (s[i]) {
                case 'n': out += '\n'; break;
                case 't': out += '\t'; break;
                case '"': out += '"'; break;
                case '\\': out += '\\'; break;
                default: fail(line, "unsupported escape in string");
            }
        } else {
            out += s[i];
        }
    }
    return out;
}

Value parse_value(std::string_view s, int line) {
    s = strip(s);
    if (s.empty()) fail(line, "missing value");
    if (s.front() == '"') return Value(Value::Storage(parse_string(s, line)));
    if (s == "true") return Value(Value::Storage(true));
    if (s == "false") return Value(Value::Storage(false));
    if (s.front() == '[') {
        if (s.back() != ']') fail(line, "unterminated array");
        std::vector<double> items;
        std::string_view body = s.substr(1, s.size() - 2);
        std::size_t start = 0;
        for (std::size_t i = 0; i <= body.size(); ++i) {
            if (i == body.size() || body[i] == ',') {
                const auto item = strip(body.substr(start, i - start));
                if (!item.empty()) items.push_back(parse_number(item, line));
                start = i + 1;
            }
        }
        return Value(Value::Storage(std::move(items)));
    }
    return Value(Value::Storage(parse_number(s, line)));
}

Table* descend(Table& root, const std::vector<std::string>& path, int line) {
    Table* t = &root;
    for (const auto& part : path) {
        auto [it, inserted] = t->try_emplace(part, Value(Value::Storage(Table{})));
        if (!it->second.is_table()) fail(line, "key '" + part + "' is not a table");
        t = &it->second.as_table();
    }
    return t;
}

}  // namespace

double Value::as_number() const {
    if (!is_number()) throw ValidationError("TOML value is not a number");
    return std::get<double>(v_);
}

bool Value::as_bool() const {
    if (!is_bool()) throw ValidationError("TOML value is not a boolean");
    return std::get<bool>(v_);
}

const std::string& Value::as_string() const {
    if (!is_string()) throw ValidationError("TOML value is not a string");
    return std::get<std::string>(v_);
}

const std::vector<double>& Value::as_array() const {
    if (!is_array()) throw ValidationError("TOML value is not an array");
    return std::get<std::vector<double>>(v_);
}

const Table& Value::as_table() const {
    if (!is_table()) throw ValidationError("TOML value is not a table");
    return std::get<Table>(v_);
}

Table& Value::as_table() {
    if (!is_table()) throw ValidationError("TOML value is not a table");
    return std::get<Table>(v_);
}

Table parse(std::string_view text) {
    Table root;
    Table* current = &root;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos
                                                                               : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;
        line = strip(strip_comment(line));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(line_no, "unterminated section header");
            const auto path = split_dotted(line.substr(1, line.size() - 2), line_no);
            current = descend(root, path, line_no);
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos) fail(line_no, "expected 'key = value'");
        const auto key = strip(line.substr(0, eq));
        if (!valid_key(key)) fail(line_no, "invalid key '" + std::string(key) + "'");
        const auto [it, inserted] =
            current->insert_or_assign(std::string(key), parse_value(line.substr(eq + 1), line_no));
        (void)it;
    }
    return root;
}

Table parse_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

const Value* find(const Table& root, const std::string& dotted_key) {
    const Table* t = &root;
    std::size_t start = 0;
    for (;;) {
        const std::size_t dot = dotted_key.find('.', start);
        const std::string part = dotted_key.substr(start, dot - start);
        const auto it = t->find(part);
        if (it == t->end()) return nullptr;
        if (dot == std::string::npos) return &it->second;
        if (!it->second.is_table()) return nullptr;
        t = &it->second.as_table();
        start = dot + 1;
    }
}

double number_or(const Table& root, const std::string& dotted_key, double fallback) {
    const Value* v = find(root, dotted_key);
    return v ? v->as_number() : fallback;
}

bool bool_or(const Table& root, const std::string& dotted_key, bool fallback) {
    const Value* v = find(root, dotted_key);
    return v ? v->as_bool() : fallback;
}

std::string string_or(const Table& root, const std::string& dotted_key,
                      const std::string& fallback) {
    const Value* v = find(root, dotted_key);
    return v ? v->as_string() : fallback;
}

}  // namespace rr::toml
