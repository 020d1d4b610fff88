#pragma once

/**
 * @file io.hpp
 * @brief Text formats: .rmc (generator matrices) and .rdist (rank distributions).
 *
 * rmc:
 *   rmc 1
 *   q=<p>^<e> m=<m> n=<n> k=<k> [poly=<c_0,...,c_e>]
 *   <k blocks of m lines of n element indices, separated by blank lines>
 *
 * rdist:
 *   rdist 1
 *   q=<q> m=<m> n=<n>
 *   W=<W_0,...,W_n>
 *
 * '#' starts a comment anywhere on a line.
 */

#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rankzeta/codes.hpp"
#include "rankzeta/errors.hpp"
#include "rankzeta/gfq.hpp"

namespace rankzeta {

namespace detail {

struct TextLine {
    std::size_t number;
    std::string text;  // comment stripped, trimmed
};

inline std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

inline std::vector<TextLine> split_lines(const std::string& text) {
    std::vector<TextLine> out;
    std::istringstream is(text);
    std::string line;
    std::size_t no = 0;
    while (std::getline(is, line)) {
        ++no;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        out.push_back({no, trim(line)});
    }
    return out;
}

inline std::vector<std::string> tokens(const std::string& s, char extra_sep = ' ') {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (std::isspace(static_cast<unsigned char>(ch)) || ch == extra_sep) {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

inline long long parse_int(const std::string& s, std::size_t line, const std::string& what) {
    if (s.empty() || s.size() > 18 || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw ParseError(line, "invalid " + what + " '" + s + "'");
    return std::stoll(s);
}

inline Integer parse_big(const std::string& s, std::size_t line) {
    const std::string t = trim(s);
    if (t.empty() || !std::all_of(t.begin(), t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw ParseError(line, "invalid count '" + t + "'");
    return Integer(t);
}

inline std::map<std::string, std::string> key_values(const TextLine& l) {
    std::map<std::string, std::string> kv;
    for (const auto& tok : tokens(l.text)) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos || eq == 0) throw ParseError(l.number, "expected key=value, got '" + tok + "'");
        const std::string key = tok.substr(0, eq);
        if (kv.count(key)) throw ParseError(l.number, "duplicate key '" + key + "'");
        kv[key] = tok.substr(eq + 1);
    }
    return kv;
}

inline std::string require_key(const std::map<std::string, std::string>& kv, const std::string& key, std::size_t line) {
    auto it = kv.find(key);
    if (it == kv.end()) throw ParseError(line, "missing '" + key + "='");
    return it->second;
}

/// "p^e" or a plain prime power.
inline std::pair<std::uint32_t, unsigned> parse_field_order(const std::string& s, std::size_t line) {
    try {
        if (auto caret = s.find('^'); caret != std::string::npos) {
            const long long p = parse_int(s.substr(0, caret), line, "characteristic");
            const long long e = parse_int(s.substr(caret + 1), line, "extension degree");
            if (!is_prime(static_cast<std::uint64_t>(p))) throw ParseError(line, "characteristic " + std::to_string(p) + " is not prime");
            if (e < 1 || e > 31) throw ParseError(line, "extension degree out of range");
            return {static_cast<std::uint32_t>(p), static_cast<unsigned>(e)};
        }
        const auto [p, e] = FieldSpec::split_prime_power(static_cast<std::uint64_t>(parse_int(s, line, "field order")));
        return {static_cast<std::uint32_t>(p), e};
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(line, e.what());
    }
}

/// Skips blank lines; returns index of the next non-blank line or lines.size().
inline std::size_t next_content(const std::vector<TextLine>& lines, std::size_t i) {
    while (i < lines.size() && lines[i].text.empty()) ++i;
    return i;
}

}  // namespace detail

inline RankCode parse_rmc(const std::string& text, bool allow_wide = false) {
    const auto lines = detail::split_lines(text);
    std::size_t i = detail::next_content(lines, 0);
    if (i == lines.size() || detail::tokens(lines[i].text) != std::vector<std::string>{"rmc", "1"})
        throw ParseError(i < lines.size() ? lines[i].number : 1, "expected header 'rmc 1'");
    i = detail::next_content(lines, i + 1);
    if (i == lines.size()) throw ParseError(0, "missing parameter line");
    const auto& hl = lines[i];
    const auto kv = detail::key_values(hl);
    for (const auto& [key, v] : kv)
        if (key != "q" && key != "m" && key != "n" && key != "k" && key != "poly") throw ParseError(hl.number, "unknown key '" + key + "'");
    const auto [p, e] = detail::parse_field_order(detail::require_key(kv, "q", hl.number), hl.number);
    const long long m = detail::parse_int(detail::require_key(kv, "m", hl.number), hl.number, "m");
    const long long n = detail::parse_int(detail::require_key(kv, "n", hl.number), hl.number, "n");
    const long long k = detail::parse_int(detail::require_key(kv, "k", hl.number), hl.number, "k");
    if (m < 1 || n < 1) throw ParseError(hl.number, "m and n must be positive");
    if (n > m && !allow_wide) throw ParseError(hl.number, "n = " + std::to_string(n) + " exceeds m = " + std::to_string(m));
    if (k > m * n) throw ParseError(hl.number, "k exceeds m*n");
    std::optional<std::vector<std::uint32_t>> modulus;
    if (auto it = kv.find("poly"); it != kv.end()) {
        std::vector<std::uint32_t> c;
        for (const auto& t : detail::tokens(it->second, ','))
            c.push_back(static_cast<std::uint32_t>(detail::parse_int(t, hl.number, "modulus coefficient")));
        modulus = c;
    }
    FieldSpec F;
    try {
        F = FieldSpec::make(p, e, modulus);
    } catch (const Error& err) {
        throw ParseError(hl.number, err.what());
    }

    // blocks of m rows
    std::vector<MatGF> gens;
    std::vector<std::size_t> block_lines;
    i = detail::next_content(lines, i + 1);
    while (i < lines.size()) {
        const std::size_t start = lines[i].number;
        std::vector<FieldElem> entries;
        std::size_t rows = 0;
        while (i < lines.size() && !lines[i].text.empty()) {
            const auto toks = detail::tokens(lines[i].text, ',');
            if (static_cast<long long>(toks.size()) != n)
                throw ParseError(lines[i].number, "expected " + std::to_string(n) + " entries, got " + std::to_string(toks.size()));
            for (const auto& t : toks) {
                const long long v = detail::parse_int(t, lines[i].number, "element index");
                if (v >= static_cast<long long>(F.order()))
                    throw ParseError(lines[i].number, "element index " + std::to_string(v) + " out of range for GF(" + std::to_string(F.order()) + ")");
                entries.push_back(FieldElem{static_cast<std::uint32_t>(v)});
            }
            ++rows;
            ++i;
        }
        if (static_cast<long long>(rows) != m)
            throw ParseError(start, "generator block has " + std::to_string(rows) + " rows, expected " + std::to_string(m));
        gens.emplace_back(F, static_cast<std::size_t>(m), static_cast<std::size_t>(n), std::move(entries));
        block_lines.push_back(start);
        // independence so far
        std::vector<FieldElem> flat;
        for (const auto& g : gens) flat.insert(flat.end(), g.entries().begin(), g.entries().end());
        if (rank(MatGF(F, gens.size(), static_cast<std::size_t>(m * n), std::move(flat))) != gens.size())
            throw ParseError(start, "generator " + std::to_string(gens.size()) + " is linearly dependent on the previous ones");
        i = detail::next_content(lines, i);
    }
    if (static_cast<long long>(gens.size()) != k)
        throw ParseError(0, "header declares k = " + std::to_string(k) + " but " + std::to_string(gens.size()) + " generators were given");
    return RankCode(F, static_cast<std::size_t>(m), static_cast<std::size_t>(n), std::move(gens), true);
}

inline std::string serialize_rmc(const RankCode& C) {
    const FieldSpec& F = C.spec();
    std::ostringstream os;
    os << "rmc 1\n";
    os << "q=" << F.characteristic() << "^" << F.degree() << " m=" << C.m() << " n=" << C.n() << " k=" << C.k();
    if (F.degree() > 1) {
        os << " poly=";
        for (std::size_t i = 0; i < F.modulus().size(); ++i) os << (i ? "," : "") << F.modulus()[i];
    }
    os << "\n";
    for (std::size_t g = 0; g < C.k(); ++g) {
        os << "\n";
        const MatGF& G = C.generators()[g];
        for (std::size_t r = 0; r < G.rows(); ++r) {
            for (std::size_t c = 0; c < G.cols(); ++c) os << (c ? " " : "") << G(r, c).index;
            os << "\n";
        }
    }
    return os.str();
}

inline WeightDistribution parse_rdist(const std::string& text, bool allow_wide = false) {
    const auto lines = detail::split_lines(text);
    std::size_t i = detail::next_content(lines, 0);
    if (i == lines.size() || detail::tokens(lines[i].text) != std::vector<std::string>{"rdist", "1"})
        throw ParseError(i < lines.size() ? lines[i].number : 1, "expected header 'rdist 1'");
    i = detail::next_content(lines, i + 1);
    if (i == lines.size()) throw ParseError(0, "missing parameter line");
    const auto& hl = lines[i];
    const auto kv = detail::key_values(hl);
    for (const auto& [key, v] : kv)
        if (key != "q" && key != "m" && key != "n") throw ParseError(hl.number, "unknown key '" + key + "'");
    const auto [p, e] = detail::parse_field_order(detail::require_key(kv, "q", hl.number), hl.number);
    const long long q = static_cast<long long>(ipow(static_cast<long long>(p), e).convert_to<long long>());
    const long long m = detail::parse_int(detail::require_key(kv, "m", hl.number), hl.number, "m");
    const long long n = detail::parse_int(detail::require_key(kv, "n", hl.number), hl.number, "n");
    i = detail::next_content(lines, i + 1);
    if (i == lines.size()) throw ParseError(0, "missing 'W=' line");
    const auto& wl = lines[i];
    if (wl.text.rfind("W=", 0) != 0) throw ParseError(wl.number, "expected 'W=<counts>'");
    std::vector<Integer> counts;
    std::string body = wl.text.substr(2);
    std::size_t pos = 0;
    while (true) {
        const auto comma = body.find(',', pos);
        counts.push_back(detail::parse_big(body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos), wl.number));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (detail::next_content(lines, i + 1) != lines.size()) throw ParseError(lines[detail::next_content(lines, i + 1)].number, "unexpected trailing content");
    try {
        return WeightDistribution::make(q, m, n, std::move(counts), allow_wide);
    } catch (const ParseError&) {
        throw;
    } catch (const InvalidParameter& err) {
        throw ParseError(wl.number, err.what());
    }
}

inline std::string serialize_rdist(const WeightDistribution& W) {
    std::ostringstream os;
    os << "rdist 1\n";
    os << "q=" << W.params().q << " m=" << W.params().m << " n=" << W.params().n << "\n";
    os << "W=";
    for (std::size_t t = 0; t < W.counts().size(); ++t) os << (t ? "," : "") << W.counts()[t];
    os << "\n";
    return os.str();
}

}  // namespace rankzeta
