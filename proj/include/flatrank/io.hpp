#pragma once

// Text interchange formats.
//
//   tns v1 order=3 subdim=<d> power=<m>
//   i1 .. im | j1 .. jm | k1 .. km | coef
//
//   mtx v1 rows=<R> cols=<C>
//   row col coef
//
// Blank lines and lines starting with '#' are skipped on input.
// Entries are written in canonical (sorted) order, so write(read(x)) == x
// byte for byte for any file this module produced.

#include <flatrank/matrix.hpp>
#include <flatrank/tensor.hpp>

#include <charconv>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace flatrank {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

template <typename Int>
Int parse_int(std::string_view tok, std::size_t line) {
    Int v{};
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
        throw ParseError(line, "expected integer, got '" + std::string(tok) + "'");
    }
    return v;
}

// Parses "key=value" with the expected key.
template <typename Int>
Int parse_field(std::string_view tok, std::string_view key, std::size_t line) {
    if (tok.size() <= key.size() + 1 || tok.substr(0, key.size()) != key || tok[key.size()] != '=') {
        throw ParseError(line, "expected '" + std::string(key) + "=<n>', got '" + std::string(tok) + "'");
    }
    return parse_int<Int>(tok.substr(key.size() + 1), line);
}

inline bool next_content_line(std::istream& in, std::string& line, std::size_t& lineno) {
    while (std::getline(in, line)) {
        ++lineno;
        const auto toks = split_ws(line);
        if (!toks.empty() && toks[0].front() != '#') return true;
    }
    return false;
}

} // namespace detail

inline void write_tensor(std::ostream& out, const SparseTensor& t) {
    const std::uint32_t d = t.shape(0).uniform_subdim();
    const std::size_t m = t.shape(0).slots();
    for (const auto& s : t.shapes()) {
        if (s.uniform_subdim() != d || s.slots() != m || d == 0) {
            throw ShapeError("tensor file format needs one uniform sub-dimension across all factors");
        }
    }
    out << "tns v1 order=3 subdim=" << d << " power=" << m << '\n';
    for (const auto& [idx, v] : t.entries()) {
        for (std::size_t r = 0; r < 3; ++r) {
            for (std::size_t s = 0; s < m; ++s) {
                if (s) out << ' ';
                out << idx.factor[r][s];
            }
            out << " | ";
        }
        out << v << '\n';
    }
}

inline SparseTensor read_tensor(std::istream& in, FieldSpec field = FieldSpec{}) {
    std::string line;
    std::size_t lineno = 0;
    if (!detail::next_content_line(in, line, lineno)) throw ParseError(lineno, "missing tensor header");
    const auto head = detail::split_ws(line);
    if (head.size() != 5 || head[0] != "tns" || head[1] != "v1" || head[2] != "order=3") {
        throw ParseError(lineno, "expected header 'tns v1 order=3 subdim=<d> power=<m>'");
    }
    const auto d = detail::parse_field<std::uint32_t>(head[3], "subdim", lineno);
    const auto m = detail::parse_field<std::size_t>(head[4], "power", lineno);
    if (d == 0 || m == 0) throw ParseError(lineno, "subdim and power must be positive");
    const auto s = FactorShape::uniform(d, m);
    SparseTensor t({s, s, s}, field);
    while (detail::next_content_line(in, line, lineno)) {
        const auto toks = detail::split_ws(line);
        if (toks.size() != 3 * (m + 1) + 1) {
            throw ParseError(lineno, "expected " + std::to_string(m) + " components per factor and a coefficient");
        }
        MultiIndex idx;
        std::size_t pos = 0;
        for (std::size_t r = 0; r < 3; ++r) {
            for (std::size_t k = 0; k < m; ++k) idx.factor[r].push_back(detail::parse_int<std::uint32_t>(toks[pos++], lineno));
            if (toks[pos++] != "|") throw ParseError(lineno, "expected '|' after factor " + std::to_string(r));
        }
        const auto coef = detail::parse_int<std::int64_t>(toks[pos], lineno);
        if (!t.in_bounds(idx)) throw ParseError(lineno, "index " + describe(idx) + " out of bounds");
        t.accumulate(idx, coef);
    }
    return t;
}

inline void write_matrix(std::ostream& out, const SparseMatrix& m) {
    out << "mtx v1 rows=" << m.rows() << " cols=" << m.cols() << '\n';
    for (const auto& [rc, v] : m.entries()) out << rc.first << ' ' << rc.second << ' ' << v << '\n';
}

inline SparseMatrix read_matrix(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    if (!detail::next_content_line(in, line, lineno)) throw ParseError(lineno, "missing matrix header");
    const auto head = detail::split_ws(line);
    if (head.size() != 4 || head[0] != "mtx" || head[1] != "v1") {
        throw ParseError(lineno, "expected header 'mtx v1 rows=<R> cols=<C>'");
    }
    SparseMatrix m(detail::parse_field<std::size_t>(head[2], "rows", lineno),
                   detail::parse_field<std::size_t>(head[3], "cols", lineno));
    while (detail::next_content_line(in, line, lineno)) {
        const auto toks = detail::split_ws(line);
        if (toks.size() != 3) throw ParseError(lineno, "expected 'row col coef'");
        const auto r = detail::parse_int<std::size_t>(toks[0], lineno);
        const auto c = detail::parse_int<std::size_t>(toks[1], lineno);
        if (r >= m.rows() || c >= m.cols()) throw ParseError(lineno, "entry out of bounds");
        m.accumulate(r, c, detail::parse_int<std::int64_t>(toks[2], lineno));
    }
    return m;
}

inline std::string to_tensor_text(const SparseTensor& t) {
    std::ostringstream os;
    write_tensor(os, t);
    return os.str();
}

inline SparseTensor from_tensor_text(const std::string& s, FieldSpec field = FieldSpec{}) {
    std::istringstream is(s);
    return read_tensor(is, field);
}

inline std::string to_matrix_text(const SparseMatrix& m) {
    std::ostringstream os;
    write_matrix(os, m);
    return os.str();
}

inline SparseMatrix from_matrix_text(const std::string& s) {
    std::istringstream is(s);
    return read_matrix(is);
}

} // namespace flatrank
