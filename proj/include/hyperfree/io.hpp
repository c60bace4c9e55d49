#pragma once

#include <cctype>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hyperfree/freeness.hpp"
#include "hyperfree/induction.hpp"
#include "hyperfree/moduli.hpp"

namespace hyperfree {

// ---------------------------------------------------------------------------------------------
// Scalars

template <ScalarDomain K>
K parse_scalar(std::string_view text);

template <>
inline BigRat parse_scalar<BigRat>(std::string_view text) {
    return BigRat::parse(text);
}

template <>
inline QuadElem parse_scalar<QuadElem>(std::string_view text) {
    return QuadElem::parse(text);
}

namespace detail {

inline std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

/// Splits s at occurrences of sep that are outside parentheses.
inline std::vector<std::string> split_top(std::string_view s, std::string_view sep) {
    std::vector<std::string> out;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(') ++depth;
        else if (s[i] == ')') --depth;
        else if (depth == 0 && s.substr(i, sep.size()) == sep) {
            out.push_back(trim(s.substr(start, i - start)));
            start = i + sep.size();
            i = start - 1;
        }
    }
    out.push_back(trim(s.substr(start)));
    return out;
}

/// Lines with comments ('#' to end of line) removed, paired with 1-based line numbers;
/// blank lines are skipped.
inline std::vector<std::pair<int, std::string>> content_lines(std::string_view text) {
    std::vector<std::pair<int, std::string>> out;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (trim(line).empty()) continue;
        out.emplace_back(lineno, line);
    }
    return out;
}

} // namespace detail

// ---------------------------------------------------------------------------------------------
// Family files: one hyperplane per line, three bracketed integer coefficient lists in ascending
// powers of t. "[1] [0, 1] [-1, 0, 2]" is the covector (1, t, 2t^2 - 1); "[]" is zero.

inline Family parse_family(std::string_view text, std::string name = "file") {
    Family f{std::move(name), {}};
    for (const auto& [lineno, line] : detail::content_lines(text)) {
        std::array<IntPoly, 3> col;
        std::size_t pos = 0;
        for (int e = 0; e < 3; ++e) {
            while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
            if (pos >= line.size() || line[pos] != '[')
                throw ParseError(lineno, static_cast<int>(pos) + 1, "expected '[' starting entry " + std::to_string(e + 1));
            const std::size_t close = line.find(']', pos);
            if (close == std::string::npos) throw ParseError(lineno, static_cast<int>(pos) + 1, "unterminated '['");
            std::vector<BigInt> coeffs;
            const std::string inner = line.substr(pos + 1, close - pos - 1);
            if (!detail::trim(inner).empty()) {
                std::size_t item = pos + 1;
                for (const auto& tok : detail::split_top(inner, ",")) {
                    const int column = static_cast<int>(item) + 1;
                    item = line.find(',', item);
                    item = item == std::string::npos || item > close ? close : item + 1;
                    try {
                        if (tok.empty()) throw std::invalid_argument("empty");
                        coeffs.emplace_back(tok, 10);
                    } catch (const std::invalid_argument&) {
                        throw ParseError(lineno, column, "invalid integer '" + tok + "'");
                    }
                }
            }
            col[e] = IntPoly(std::move(coeffs));
            pos = close + 1;
        }
        while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
        if (pos < line.size()) throw ParseError(lineno, static_cast<int>(pos) + 1, "unexpected text after third entry");
        f.columns.push_back(std::move(col));
    }
    if (f.columns.empty()) throw ParseError(1, 1, "no hyperplanes");
    return f;
}

inline std::string format_family(const Family& f) {
    std::string out;
    for (const auto& col : f.columns) {
        for (int e = 0; e < 3; ++e) {
            if (e) out += " ";
            out += "[";
            for (int k = 0; k <= col[e].degree(); ++k) {
                if (k) out += ", ";
                out += col[e].coeff(k).get_str();
            }
            out += "]";
        }
        out += "\n";
    }
    return out;
}

// ---------------------------------------------------------------------------------------------
// Arrangement files: one hyperplane per line, three rationals separated by spaces or commas,
// optionally in parentheses: "1 0 -1/2" or "(1, 0, -1/2)".

inline Arrangement<BigRat> parse_arrangement(std::string_view text) {
    std::vector<Vec3<BigRat>> cols;
    for (const auto& [lineno, raw] : detail::content_lines(text)) {
        std::string line = raw;
        for (char& c : line)
            if (c == ',' || c == '(' || c == ')') c = ' ';
        std::vector<std::pair<std::size_t, std::string>> toks;
        for (std::size_t i = 0; i < line.size();) {
            if (std::isspace(static_cast<unsigned char>(line[i]))) {
                ++i;
                continue;
            }
            std::size_t j = i;
            while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
            toks.emplace_back(i, line.substr(i, j - i));
            i = j;
        }
        if (toks.size() != 3)
            throw ParseError(lineno, 1, "expected 3 coordinates, found " + std::to_string(toks.size()));
        Vec3<BigRat> v;
        for (int e = 0; e < 3; ++e) {
            try {
                v[e] = BigRat::parse(toks[e].second);
            } catch (const Error&) {
                throw ParseError(lineno, static_cast<int>(toks[e].first) + 1, "invalid rational '" + toks[e].second + "'");
            }
        }
        cols.push_back(v);
    }
    return Arrangement<BigRat>::build(std::move(cols));
}

inline std::string format_arrangement(const Arrangement<BigRat>& a) {
    std::string out;
    for (const auto& c : a.columns()) out += c[0].to_string() + " " + c[1].to_string() + " " + c[2].to_string() + "\n";
    return out;
}

/// Either a one-parameter family or a rational arrangement.
using Input = std::variant<Family, Arrangement<BigRat>>;

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Built-in names paper13 / paper15, otherwise a file: family format when it contains '[',
/// arrangement format otherwise.
inline Input load_input(const std::string& source) {
    if (source == "paper13") return family_13();
    if (source == "paper15") return family_15();
    const std::string text = read_file(source);
    if (text.find('[') != std::string::npos) return parse_family(text, source);
    return parse_arrangement(text);
}

// ---------------------------------------------------------------------------------------------
// Homogeneous polynomials and derivations

/// Inverse of HomPoly::to_string for a known degree.
template <ScalarDomain K>
HomPoly<K> parse_hom_poly(std::string_view text, int degree) {
    HomPoly<K> p(degree);
    const std::string s = detail::trim(text);
    if (s == "0") return p;
    static const std::regex var(R"((-?)x([123])(?:\^(\d+))?)");
    for (const auto& term : detail::split_top(s, " + ")) {
        K coef = one<K>();
        Monomial m{0, 0, 0};
        for (const auto& factor : detail::split_top(term, "*")) {
            std::smatch mt;
            if (std::regex_match(factor, mt, var)) {
                if (mt[1].length()) coef = -coef;
                m[std::stoi(mt[2]) - 1] += mt[3].matched ? std::stoi(mt[3]) : 1;
            } else {
                coef = coef * parse_scalar<K>(factor);
            }
        }
        if (m[0] + m[1] + m[2] != degree) throw Error("term '" + term + "' has the wrong degree");
        p.coeff(m) += coef;
    }
    return p;
}

/// Text form:
///   saito certificate
///   field Q(sqrt(2))
///   constant c
///   theta degree p
///     f1 = ...
///     f2 = ...
///     f3 = ...
/// (three theta blocks).
template <ScalarDomain K>
std::string format_certificate(const SaitoCertificate<K>& cert) {
    std::string out = "saito certificate\n";
    out += "field " + field_name(cert.constant) + "\n";
    out += "constant " + cert.constant.to_string() + "\n";
    for (const auto& theta : cert.basis) {
        out += "theta degree " + std::to_string(theta.pdeg()) + "\n";
        for (int i = 0; i < 3; ++i) out += "  f" + std::to_string(i + 1) + " = " + theta.coords[i].to_string() + "\n";
    }
    return out;
}

template <ScalarDomain K>
SaitoCertificate<K> parse_certificate(std::string_view text) {
    const auto lines = detail::content_lines(text);
    auto expect = [&](std::size_t i, std::string_view prefix) -> std::string {
        if (i >= lines.size()) throw ParseError(lines.empty() ? 1 : lines.back().first + 1, 1, "unexpected end of certificate");
        const std::string l = detail::trim(lines[i].second);
        if (l.rfind(prefix, 0) != 0) throw ParseError(lines[i].first, 1, "expected '" + std::string(prefix) + "'");
        return detail::trim(std::string_view(l).substr(prefix.size()));
    };
    expect(0, "saito certificate");
    expect(1, "field");
    SaitoCertificate<K> cert;
    try {
        cert.constant = parse_scalar<K>(expect(2, "constant"));
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(lines[2].first, 1, e.what());
    }
    std::size_t i = 3;
    for (auto& theta : cert.basis) {
        const int p = std::stoi(expect(i++, "theta degree"));
        for (int c = 0; c < 3; ++c) {
            const std::string body = expect(i, "f" + std::to_string(c + 1) + " =");
            try {
                theta.coords[c] = parse_hom_poly<K>(body, p);
            } catch (const ParseError&) {
                throw;
            } catch (const Error& e) {
                throw ParseError(lines[i].first, 1, e.what());
            }
            ++i;
        }
    }
    return cert;
}

// ---------------------------------------------------------------------------------------------
// Recursive-freeness chains: one move per line,
//   add (a, b, c) size k exponents [[1,e,f]]
//   delete (a, b, c) size k exponents [[1,e,f]]
// where exponents are those of the arrangement after the move.

template <ScalarDomain K>
Vec3<K> parse_vec3(std::string_view text) {
    const std::string s = detail::trim(text);
    if (s.size() < 2 || s.front() != '(' || s.back() != ')') throw Error("expected '(a, b, c)'");
    const auto parts = detail::split_top(std::string_view(s).substr(1, s.size() - 2), ", ");
    if (parts.size() != 3) throw Error("expected three coordinates");
    return {parse_scalar<K>(parts[0]), parse_scalar<K>(parts[1]), parse_scalar<K>(parts[2])};
}

inline Exponents parse_exponents(std::string_view text) {
    static const std::regex re(R"(\[\[\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\]\])");
    std::string s = detail::trim(text);
    std::smatch m;
    if (!std::regex_match(s, m, re)) throw Error("expected exponents '[[a,b,c]]'");
    return {std::stoi(m[1]), std::stoi(m[2]), std::stoi(m[3])};
}

template <ScalarDomain K>
std::string format_chain(const std::vector<RFMove<K>>& chain) {
    std::string out;
    for (const auto& mv : chain) {
        out += mv.kind == MoveKind::Add ? "add " : "delete ";
        out += to_string(mv.covector) + " size " + std::to_string(mv.restriction_size) + " exponents " +
               to_string(mv.exp_after) + "\n";
    }
    return out;
}

template <ScalarDomain K>
std::vector<RFMove<K>> parse_chain(std::string_view text) {
    static const std::regex re(R"(^\s*(add|delete)\s+(\(.*\))\s+size\s+(\d+)\s+exponents\s+(\[\[.*\]\])\s*$)");
    std::vector<RFMove<K>> out;
    for (const auto& [lineno, line] : detail::content_lines(text)) {
        std::smatch m;
        if (!std::regex_match(line, m, re)) throw ParseError(lineno, 1, "expected 'add|delete (a, b, c) size k exponents [[1,e,f]]'");
        try {
            out.push_back({m[1] == "add" ? MoveKind::Add : MoveKind::Delete, parse_vec3<K>(m[2].str()),
                           std::stoi(m[3]), parse_exponents(m[4].str())});
        } catch (const Error& e) {
            throw ParseError(lineno, static_cast<int>(m.position(2)) + 1, e.what());
        }
    }
    return out;
}

} // namespace hyperfree
