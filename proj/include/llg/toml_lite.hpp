#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace llg::toml {

/// Small reader for the subset of TOML the input files use: named sections,
/// string / integer / string-array values, quoted keys, # comments.
struct Value {
    enum class Kind { Str, Int, Array };
    Kind kind = Kind::Str;
    std::string str;
    long long num = 0;
    std::vector<std::string> arr;
};

struct Table {
    std::vector<std::pair<std::string, Value>> items;

    const Value* find(const std::string& key) const {
        for (const auto& [k, v] : items)
            if (k == key) return &v;
        return nullptr;
    }

    const Value& need(const std::string& key, const char* what) const {
        const Value* v = find(key);
        if (!v) throw ParseError(std::string(what) + " is missing key '" + key + "'");
        return *v;
    }
};

struct Document {
    Table top;
    std::vector<std::pair<std::string, Table>> sections;

    const Table* section(const std::string& name) const {
        for (const auto& [n, t] : sections)
            if (n == name) return &t;
        return nullptr;
    }
};

namespace detail {

inline std::string strip(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

/// Removes a trailing comment, honoring double quotes.
inline std::string drop_comment(const std::string& line) {
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') quoted = !quoted;
        if (line[i] == '#' && !quoted) return line.substr(0, i);
    }
    return line;
}

inline bool balanced_brackets(const std::string& s) {
    int depth = 0;
    bool quoted = false;
    for (char c : s) {
        if (c == '"') quoted = !quoted;
        if (quoted) continue;
        if (c == '[') ++depth;
        if (c == ']') --depth;
    }
    return depth <= 0;
}

inline Value parse_value(const std::string& raw) {
    std::string s = strip(raw);
    if (s.empty()) throw ParseError("empty value");
    Value v;
    if (s.front() == '"') {
        std::size_t end = s.find('"', 1);
        if (end == std::string::npos || strip(s.substr(end + 1)) != "")
            throw ParseError("malformed string value: " + s);
        v.kind = Value::Kind::Str;
        v.str = s.substr(1, end - 1);
        return v;
    }
    if (s.front() == '[') {
        if (s.back() != ']') throw ParseError("malformed array value: " + s);
        v.kind = Value::Kind::Array;
        std::string body = s.substr(1, s.size() - 2);
        std::string cur;
        bool quoted = false;
        auto flush = [&] {
            std::string e = strip(cur);
            cur.clear();
            if (e.empty()) return;
            if (e.front() == '"' && e.back() == '"' && e.size() >= 2)
                v.arr.push_back(e.substr(1, e.size() - 2));
            else
                v.arr.push_back(e);
        };
        for (char c : body) {
            if (c == '"') quoted = !quoted;
            if (c == ',' && !quoted) {
                flush();
                continue;
            }
            cur.push_back(c);
        }
        flush();
        return v;
    }
    v.kind = Value::Kind::Int;
    std::size_t used = 0;
    try {
        v.num = std::stoll(s, &used);
    } catch (const std::exception&) {
        throw ParseError("expected a string, array or integer, got: " + s);
    }
    if (used != s.size()) throw ParseError("trailing characters in value: " + s);
    return v;
}

inline std::string parse_key(const std::string& raw) {
    std::string k = strip(raw);
    if (k.size() >= 2 && k.front() == '"' && k.back() == '"') return k.substr(1, k.size() - 2);
    return k;
}

}  // namespace detail

inline Document parse_toml(const std::string& text) {
    Document doc;
    Table* current = &doc.top;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::string s = detail::strip(detail::drop_comment(line));
        if (s.empty()) continue;
        if (s.front() == '[' && s.back() == ']' && s.find('=') == std::string::npos) {
            std::string name = detail::strip(s.substr(1, s.size() - 2));
            if (name.empty()) throw ParseError("empty section name");
            doc.sections.emplace_back(name, Table{});
            current = &doc.sections.back().second;
            continue;
        }
        std::size_t eq = std::string::npos;
        bool quoted = false;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] == '"') quoted = !quoted;
            if (s[i] == '=' && !quoted) {
                eq = i;
                break;
            }
        }
        if (eq == std::string::npos) throw ParseError("expected key = value, got: " + s);
        std::string raw_key = detail::strip(s.substr(0, eq));
        std::string key = detail::parse_key(raw_key);
        std::string value = s.substr(eq + 1);
        // A multi-line array continues until its brackets close.
        while (!detail::balanced_brackets(value)) {
            std::string more;
            if (!std::getline(in, more)) throw ParseError("unterminated array for key " + key);
            value += " " + detail::strip(detail::drop_comment(more));
        }
        // A quoted empty key is legal; form files use it for degree zero.
        if (key.empty() && raw_key != "\"\"") throw ParseError("empty key");
        current->items.emplace_back(key, detail::parse_value(value));
    }
    return doc;
}

inline Document load_toml_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_toml(buf.str());
}

}  // namespace llg::toml
