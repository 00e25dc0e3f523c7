#include "hwp/io.hpp"

#include <cctype>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace hwp {

namespace {

std::string trim(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(trim(cur));
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

std::string double_text(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string rational_text(const Rational& q) { return q.get_str(); }

u64 parse_u64(const std::string& t, size_t line, const char* what) {
    if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos)
        throw CsvParseError(line, std::string("expected a nonnegative integer for ") + what + ", got '" + t + "'");
    try {
        return std::stoull(t);
    } catch (const std::exception&) {
        throw CsvParseError(line, std::string(what) + " out of range: '" + t + "'");
    }
}

enum class Layout { Real, Complex, Exact };

struct Rows {
    std::vector<CycloNumber> values;
    std::map<std::string, std::string> meta;
};

// first_index: 0 for q-expansions, 1 for Dirichlet coefficients
Rows read_rows(std::istream& is, size_t first_index) {
    Rows out;
    std::string raw;
    size_t line = 0;
    std::optional<Layout> layout;
    while (std::getline(is, raw)) {
        ++line;
        std::string text = trim(raw);
        if (text.empty()) continue;
        if (text[0] == '#') {
            std::istringstream words(text.substr(1));
            std::string w;
            while (words >> w) {
                auto eq = w.find('=');
                if (eq != std::string::npos) out.meta[w.substr(0, eq)] = w.substr(eq + 1);
            }
            continue;
        }
        auto cols = split(text, ',');
        if (!layout) {
            if (cols.empty() || cols[0] != "n") throw CsvParseError(line, "header must start with column 'n'");
            if (cols.size() >= 2 && cols[1] == "cyclo_order")
                layout = Layout::Exact;
            else if (cols.size() == 2)
                layout = Layout::Real;
            else if (cols.size() == 3)
                layout = Layout::Complex;
            else
                throw CsvParseError(line, "unrecognized header '" + text + "'");
            continue;
        }
        const size_t n = parse_u64(cols[0], line, "n");
        if (n != first_index + out.values.size())
            throw CsvParseError(line, "expected n = " + std::to_string(first_index + out.values.size()) + ", got " +
                                          std::to_string(n));
        try {
            switch (*layout) {
                case Layout::Real:
                    if (cols.size() != 2) throw CsvParseError(line, "expected 2 columns");
                    out.values.emplace_back(parse_rational(cols[1]));
                    break;
                case Layout::Complex: {
                    if (cols.size() != 3) throw CsvParseError(line, "expected 3 columns");
                    Rational re = parse_rational(cols[1]), im = parse_rational(cols[2]);
                    CycloNumber v(re);
                    if (im != 0) v += CycloNumber::scaled_root(4, 1, im);
                    out.values.push_back(std::move(v));
                    break;
                }
                case Layout::Exact: {
                    if (cols.size() < 3) throw CsvParseError(line, "expected n,cyclo_order,c0,...");
                    auto m = static_cast<unsigned>(parse_u64(cols[1], line, "cyclo_order"));
                    if (m == 0) throw CsvParseError(line, "cyclo_order must be positive");
                    std::vector<Rational> c;
                    for (size_t j = 2; j < cols.size(); ++j) c.push_back(parse_rational(cols[j]));
                    out.values.push_back(CycloNumber::from_coeffs(m, c));
                    break;
                }
            }
        } catch (const CsvParseError&) {
            throw;
        } catch (const std::exception& e) {
            throw CsvParseError(line, e.what());
        }
    }
    if (!layout) throw CsvParseError(line, "missing header row");
    return out;
}

void write_rows(std::ostream& os, std::span<const CycloNumber> values, size_t first_index, bool exact) {
    if (exact) {
        const unsigned m = common_order(values);
        const unsigned phi = CyclotomicField::get(m).degree();
        os << "n,cyclo_order";
        for (unsigned j = 0; j < phi; ++j) os << ",c" << j;
        os << '\n';
        for (size_t i = 0; i < values.size(); ++i) {
            os << first_index + i << ',' << m;
            for (const auto& c : values[i].promoted(m).coeffs()) os << ',' << rational_text(c);
            os << '\n';
        }
    } else {
        os << "n,coeff_real,coeff_imag\n";
        for (size_t i = 0; i < values.size(); ++i) {
            auto z = values[i].to_complex();
            os << first_index + i << ',' << double_text(z.real()) << ',' << double_text(z.imag()) << '\n';
        }
    }
}

}  // namespace

Rational parse_rational(const std::string& text) {
    std::string t = trim(text);
    if (t.empty()) throw DomainError("empty number");
    auto slash = t.find('/');
    if (slash != std::string::npos) {
        Integer num, den;
        if (num.set_str(t.substr(0, slash), 10) != 0 || den.set_str(t.substr(slash + 1), 10) != 0)
            throw DomainError("malformed rational '" + t + "'");
        if (den == 0) throw DomainError("zero denominator in '" + t + "'");
        Rational q(num, den);
        q.canonicalize();
        return q;
    }
    // [sign] digits [. digits] [e [sign] digits]
    size_t pos = 0;
    bool neg = false;
    if (t[pos] == '+' || t[pos] == '-') neg = t[pos++] == '-';
    std::string digits;
    long scale = 0;
    bool any = false;
    while (pos < t.size() && std::isdigit(static_cast<unsigned char>(t[pos]))) digits += t[pos++], any = true;
    if (pos < t.size() && t[pos] == '.') {
        ++pos;
        while (pos < t.size() && std::isdigit(static_cast<unsigned char>(t[pos]))) digits += t[pos++], --scale, any = true;
    }
    if (!any) throw DomainError("malformed number '" + t + "'");
    if (pos < t.size() && (t[pos] == 'e' || t[pos] == 'E')) {
        ++pos;
        size_t used = 0;
        long e = 0;
        try {
            e = std::stol(t.substr(pos), &used);
        } catch (const std::exception&) {
            throw DomainError("malformed exponent in '" + t + "'");
        }
        pos += used;
        scale += e;
    }
    if (pos != t.size()) throw DomainError("trailing characters in '" + t + "'");
    Integer n(digits, 10);
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(scale)));
    Rational q = scale >= 0 ? Rational(n * p) : Rational(n, p);
    q.canonicalize();
    return neg ? Rational(-q) : q;
}

void write_qexpansion_csv(std::ostream& os, const QExpansion& f, bool exact) {
    os << "# qexpansion weight_twice=" << f.weight_twice() << " level=" << f.level()
       << " character=" << f.character().debug_line() << " cuspidal=" << (f.cuspidal() ? 1 : 0)
       << " s_star=" << (f.lifts_to_cusp_form() ? 1 : 0) << '\n';
    write_rows(os, f.coeffs(), 0, exact);
}

QExpansion read_qexpansion_csv(std::istream& is) {
    Rows rows = read_rows(is, 0);
    if (rows.values.empty()) throw CsvParseError(0, "no coefficients");
    auto get = [&](const char* key, const std::string& dflt) {
        auto it = rows.meta.find(key);
        return it == rows.meta.end() ? dflt : it->second;
    };
    int wt = std::stoi(get("weight_twice", "1"));
    u64 level = std::stoull(get("level", "4"));
    DirichletCharacter chi = parse_character(get("character", "1;;1;even"));
    QExpansion f(std::move(rows.values), wt, level, chi);
    f.set_cuspidal(get("cuspidal", "0") == "1");
    f.set_lifts_to_cusp_form(get("s_star", "0") == "1");
    return f;
}

void write_series_csv(std::ostream& os, const DirichletSeries& a, bool exact) { write_rows(os, a.coeffs(), 1, exact); }

std::vector<CycloNumber> read_values_csv(std::istream& is) { return read_rows(is, 1).values; }

DirichletCharacter parse_character(const std::string& line) {
    auto parts = split(line, ';');
    if (parts.size() != 4) throw DomainError("malformed character '" + line + "'");
    u64 M = std::stoull(parts[0]);
    std::vector<u64> ex;
    if (!parts[1].empty())
        for (auto& e : split(parts[1], ',')) ex.push_back(std::stoull(e));
    DirichletCharacter chi(M, ex);
    if (chi.debug_line() != line) throw DomainError("character '" + line + "' is inconsistent (computed " + chi.debug_line() + ")");
    return chi;
}

}  // namespace hwp
