#pragma once

#include <cctype>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "orbitlab/matrix.hpp"
#include "orbitlab/specmeas.hpp"

namespace orbitlab {

// Line-oriented operator-spec format.
//
//   # comment
//   factor II_1 | II_inf | III | I_fin <n> | I_inf <kappa>
//   atom <x> <y> value <v>
//   block rect <x0> <y0> <x1> <y1> value <v>
//   block seg  <x0> <y0> <x1> <y1> value <v>
//
// or, after the factor line,
//
//   matrix <n>
//   <n rows of n complex entries a+bi>
//
// Rationals are written p/q (q a power of two where geometry requires);
// values are rationals, `inf`, or `alephK`.  Complex entries use decimal
// doubles.

using ParsedOperator = std::variant<SpectralMeasure, NormalMatrix>;

namespace detail_io {

inline std::vector<std::string> tokens(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream ss(line);
    std::string t;
    while (ss >> t) {
        if (t[0] == '#') break;
        out.push_back(t);
    }
    return out;
}

inline Rational parse_rational(const std::string& s, int line) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            size_t used = 0;
            long long n = std::stoll(s, &used);
            if (used != s.size()) throw std::invalid_argument(s);
            return Rational(n);
        }
        size_t u1 = 0, u2 = 0;
        long long n = std::stoll(s.substr(0, slash), &u1);
        long long d = std::stoll(s.substr(slash + 1), &u2);
        if (u1 != slash || u2 != s.size() - slash - 1 || d <= 0)
            throw std::invalid_argument(s);
        return Rational(n, d);
    } catch (const std::exception&) {
        throw ParseError(line, "expected a rational p/q, got '" + s + "'");
    }
}

inline DimValue parse_value(const std::string& s, const FactorType& f, int line) {
    if (s == "inf") {
        if (f.tag != FactorTag::II_inf && f.tag != FactorTag::III)
            throw ParseError(line, "'inf' is not a class of factor " + f.str());
        return DimValue::infinite(f);
    }
    if (s.rfind("aleph", 0) == 0) {
        if (f.tag != FactorTag::I_inf)
            throw ParseError(line, "aleph values require an I_inf factor");
        try {
            size_t used = 0;
            long long idx = std::stoll(s.substr(5), &used);
            if (used != s.size() - 5) throw std::invalid_argument(s);
            return DimValue::aleph(f, idx);
        } catch (const Error&) {
            throw;
        } catch (const std::exception&) {
            throw ParseError(line, "bad aleph index in '" + s + "'");
        }
    }
    Rational q = parse_rational(s, line);
    try {
        if (f.type_ii()) return DimValue::trace(f, q);
        if (!q.is_integer() || q.is_negative())
            throw ParseError(line, "type I/III values must be nonnegative integers or alephs");
        return DimValue::finite_card(f, q.num());
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(line, std::string("bad value '") + s + "': " + e.what());
    }
}

inline Complex parse_complex(const std::string& s, int line) {
    // Forms: a | bi | a+bi | a-bi, with decimal doubles (exponents allowed).
    std::string t = s;
    bool has_i = !t.empty() && t.back() == 'i';
    if (has_i) t.pop_back();
    if (t.empty()) throw ParseError(line, "bad complex entry '" + s + "'");
    // Split at the last top-level sign that is not an exponent sign.
    size_t split = std::string::npos;
    for (size_t i = t.size(); i-- > 1;) {
        if ((t[i] == '+' || t[i] == '-') && t[i - 1] != 'e' && t[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    try {
        if (!has_i) {
            if (split != std::string::npos) throw std::invalid_argument(s);
            size_t used = 0;
            double re = std::stod(t, &used);
            if (used != t.size()) throw std::invalid_argument(s);
            return Complex(re, 0.0);
        }
        if (split == std::string::npos) {
            size_t used = 0;
            double im = t == "+" ? 1.0 : t == "-" ? -1.0 : std::stod(t, &used);
            if (!(t == "+" || t == "-") && used != t.size()) throw std::invalid_argument(s);
            return Complex(0.0, im);
        }
        size_t u1 = 0, u2 = 0;
        double re = std::stod(t.substr(0, split), &u1);
        std::string ims = t.substr(split);
        double im = ims == "+" ? 1.0 : ims == "-" ? -1.0 : std::stod(ims, &u2);
        if (u1 != split || (!(ims == "+" || ims == "-") && u2 != ims.size()))
            throw std::invalid_argument(s);
        return Complex(re, im);
    } catch (const std::exception&) {
        throw ParseError(line, "bad complex entry '" + s + "'");
    }
}

inline FactorType parse_factor(const std::vector<std::string>& tk, int line) {
    if (tk.size() < 2) throw ParseError(line, "factor line needs a factor name");
    const std::string& name = tk[1];
    try {
        if (name == "II_1") return FactorType::ii_1();
        if (name == "II_inf") return FactorType::ii_inf();
        if (name == "III") return FactorType::iii();
        if (name == "I_fin") {
            if (tk.size() < 3) throw ParseError(line, "I_fin needs a dimension");
            return FactorType::i_fin(std::stoll(tk[2]));
        }
        if (name == "I_inf") {
            if (tk.size() < 3) throw ParseError(line, "I_inf needs an aleph index");
            return FactorType::i_inf(std::stoll(tk[2]));
        }
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        throw ParseError(line, "bad factor parameter");
    }
    throw ParseError(line, "unknown factor '" + name + "'");
}

}  // namespace detail_io

inline ParsedOperator parse_operator_spec(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;

    std::optional<FactorType> factor;
    std::vector<Atom> atoms;
    std::vector<Block> blocks;
    bool saw_matrix = false;
    Eigen::Index mat_n = 0, mat_row = 0;
    CMat mat;

    while (std::getline(in, raw)) {
        ++line_no;
        auto tk = detail_io::tokens(raw);
        if (tk.empty()) continue;

        if (saw_matrix && mat_row < mat_n) {
            if ((Eigen::Index)tk.size() != mat_n)
                throw ParseError(line_no, "matrix row needs " + std::to_string(mat_n) +
                                              " entries, got " + std::to_string(tk.size()));
            for (Eigen::Index j = 0; j < mat_n; ++j)
                mat(mat_row, j) = detail_io::parse_complex(tk[(size_t)j], line_no);
            ++mat_row;
            continue;
        }

        const std::string& kw = tk[0];
        if (kw == "factor") {
            if (factor) throw ParseError(line_no, "duplicate factor line");
            factor = detail_io::parse_factor(tk, line_no);
        } else if (kw == "atom") {
            if (!factor) throw ParseError(line_no, "atom before factor line");
            if (tk.size() != 5 || tk[3] != "value")
                throw ParseError(line_no, "atom syntax: atom <x> <y> value <v>");
            RatPoint pt{detail_io::parse_rational(tk[1], line_no),
                        detail_io::parse_rational(tk[2], line_no)};
            atoms.push_back({pt, detail_io::parse_value(tk[4], *factor, line_no)});
        } else if (kw == "block") {
            if (!factor) throw ParseError(line_no, "block before factor line");
            if (tk.size() != 8 || tk[6] != "value" || (tk[1] != "rect" && tk[1] != "seg"))
                throw ParseError(line_no,
                                 "block syntax: block rect|seg <x0> <y0> <x1> <y1> value <v>");
            Box shape(detail_io::parse_rational(tk[2], line_no),
                      detail_io::parse_rational(tk[3], line_no),
                      detail_io::parse_rational(tk[4], line_no),
                      detail_io::parse_rational(tk[5], line_no));
            if (tk[1] == "rect" && shape.degenerate())
                throw ParseError(line_no, "rect block must have positive width and height");
            if (tk[1] == "seg" && !shape.is_segment())
                throw ParseError(line_no, "seg block must be degenerate in exactly one axis");
            blocks.push_back({shape, detail_io::parse_value(tk[7], *factor, line_no)});
        } else if (kw == "matrix") {
            if (!factor) throw ParseError(line_no, "matrix before factor line");
            if (saw_matrix) throw ParseError(line_no, "duplicate matrix block");
            if (tk.size() != 2) throw ParseError(line_no, "matrix syntax: matrix <n>");
            try {
                mat_n = std::stoll(tk[1]);
            } catch (const std::exception&) {
                throw ParseError(line_no, "bad matrix dimension");
            }
            if (mat_n <= 0) throw ParseError(line_no, "matrix dimension must be positive");
            mat = CMat::Zero(mat_n, mat_n);
            saw_matrix = true;
        } else {
            throw ParseError(line_no, "unknown record '" + kw + "'");
        }
    }

    if (!factor) throw ParseError(line_no, "missing factor line");
    if (saw_matrix) {
        if (mat_row != mat_n)
            throw ParseError(line_no, "matrix has " + std::to_string(mat_row) + " of " +
                                          std::to_string(mat_n) + " rows");
        if (!atoms.empty() || !blocks.empty())
            throw ParseError(line_no, "a file holds either a measure or a matrix, not both");
        return NormalMatrix(mat);
    }
    return SpectralMeasure(*factor, std::move(atoms), std::move(blocks));
}

inline std::string serialize(const SpectralMeasure& m) {
    std::ostringstream out;
    out << "factor " << m.factor().str() << "\n";
    for (const Atom& a : m.atoms())
        out << "atom " << a.pt.x.str() << " " << a.pt.y.str() << " value " << a.val.str()
            << "\n";
    for (const Block& b : m.blocks())
        out << "block " << (b.is_segment() ? "seg" : "rect") << " " << b.shape.x0.str() << " "
            << b.shape.y0.str() << " " << b.shape.x1.str() << " " << b.shape.y1.str()
            << " value " << b.val.str() << "\n";
    return out.str();
}

inline std::string format_complex(const Complex& z) {
    std::ostringstream out;
    out.precision(17);
    out << z.real();
    if (z.imag() >= 0 || std::isnan(z.imag())) out << "+";
    out << z.imag() << "i";
    return out.str();
}

inline std::string serialize(const NormalMatrix& m, const FactorType& factor) {
    std::ostringstream out;
    out << "factor " << factor.str() << "\n";
    out << "matrix " << m.dim() << "\n";
    for (Eigen::Index i = 0; i < m.dim(); ++i) {
        for (Eigen::Index j = 0; j < m.dim(); ++j) {
            if (j) out << " ";
            out << format_complex(m.mat()(i, j));
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace orbitlab
