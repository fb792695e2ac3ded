#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "steinkit/closedform.hpp"
#include "steinkit/equation.hpp"
#include "steinkit/matrix.hpp"

namespace steinkit {

using json = nlohmann::json;

namespace detail {

inline double number_at(const json& j, const std::string& where) {
    if (!j.is_number()) throw ParseError(where + ": expected a number");
    return j.get<double>();
}

inline CMatrix matrix_at(const json& j, const std::string& name) {
    if (!j.is_array() || j.empty())
        throw ParseError(name + ": expected a nonempty array of rows");
    const std::size_t rows = j.size();
    const json& first = j[0];
    if (!first.is_array() || first.empty())
        throw ParseError(name + "[0]: expected a nonempty row");
    const std::size_t cols = first.size();

    std::vector<cplx> entries;
    entries.reserve(rows * cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const json& row = j[i];
        const std::string rowpath = name + "[" + std::to_string(i) + "]";
        if (!row.is_array() || row.size() != cols)
            throw ParseError(rowpath + ": ragged row (expected " + std::to_string(cols) +
                             " entries)");
        for (std::size_t k = 0; k < cols; ++k) {
            const json& e = row[k];
            const std::string epath = rowpath + "[" + std::to_string(k) + "]";
            if (!e.is_array() || e.size() != 2)
                throw ParseError(epath + ": entry must be an [re, im] pair");
            entries.emplace_back(number_at(e[0], epath + "[0]"), number_at(e[1], epath + "[1]"));
        }
    }
    try {
        return CMatrix(rows, cols, std::move(entries));
    } catch (const NonFiniteEntry& err) {
        throw ParseError(name + ": " + err.what());
    }
}

inline std::vector<CMatrix> matrix_list_at(const json& j, const std::string& name) {
    if (!j.is_array() || j.empty()) throw ParseError(name + ": expected matrix or matrix list");
    // a list of matrices is an array whose first element is itself a matrix
    if (j[0].is_array() && !j[0].empty() && j[0][0].is_array() && !j[0][0].empty() &&
        j[0][0][0].is_array()) {
        std::vector<CMatrix> list;
        for (std::size_t i = 0; i < j.size(); ++i)
            list.push_back(matrix_at(j[i], name + "[" + std::to_string(i) + "]"));
        return list;
    }
    return {matrix_at(j, name)};
}

inline std::string format_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

} // namespace detail

inline Kind kind_from_name(const std::string& s) {
    if (s == "standard") return Kind::standard;
    if (s == "transpose") return Kind::transpose;
    if (s == "conjugate") return Kind::conjugate;
    if (s == "hermitian") return Kind::hermitian;
    if (s == "generalN") return Kind::general_n;
    throw ParseError("kind: unknown value '" + s + "'");
}

inline FKind f_from_name(const std::string& s) {
    if (s == "identity") return FKind::identity;
    if (s == "transpose") return FKind::transpose;
    if (s == "conjugate") return FKind::conjugate;
    if (s == "hermitian") return FKind::hermitian;
    throw ParseError("f: unknown value '" + s + "'");
}

/// Parses an equation file object:
///   { "kind": ..., ["f": ...,] "A": matrix|list, "B": matrix|list, "C": matrix }
/// with every entry an [re, im] pair.
inline EquationSpec parse_equation(const json& j) {
    if (!j.is_object()) throw ParseError("top level: expected an object");
    if (!j.contains("kind") || !j["kind"].is_string())
        throw ParseError("kind: required string field");
    const Kind kind = kind_from_name(j["kind"].get<std::string>());

    for (const char* field : {"A", "B", "C"})
        if (!j.contains(field)) throw ParseError(std::string(field) + ": required field");

    const CMatrix c = detail::matrix_at(j["C"], "C");
    std::vector<CMatrix> as = detail::matrix_list_at(j["A"], "A");
    std::vector<CMatrix> bs = detail::matrix_list_at(j["B"], "B");

    if (kind != Kind::general_n) {
        if (j.contains("f")) throw ParseError("f: only valid with kind generalN");
        if (as.size() != 1 || bs.size() != 1)
            throw ParseError("A/B: single-term kinds take exactly one matrix each");
        switch (kind) {
            case Kind::standard: return EquationSpec::standard(as[0], bs[0], c);
            case Kind::transpose: return EquationSpec::transpose(as[0], bs[0], c);
            case Kind::conjugate: return EquationSpec::conjugate(as[0], bs[0], c);
            case Kind::hermitian: return EquationSpec::hermitian(as[0], bs[0], c);
            default: break;
        }
    }
    if (!j.contains("f") || !j["f"].is_string())
        throw ParseError("f: required string field for kind generalN");
    const FKind f = f_from_name(j["f"].get<std::string>());
    return EquationSpec::general_n(f, std::move(as), std::move(bs), c);
}

inline EquationSpec load_equation_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
    return parse_equation(j);
}

// ---------------------------------------------------------------------------
// serialization: numbers are printed with 17 significant digits so that
// parse(print(x)) round-trips doubles exactly

inline std::string to_json(const CMatrix& x) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < x.rows(); ++i) {
        os << (i ? ",[" : "[");
        for (std::size_t j = 0; j < x.cols(); ++j) {
            if (j) os << ",";
            os << "[" << detail::format_number(x(i, j).real()) << ","
               << detail::format_number(x(i, j).imag()) << "]";
        }
        os << "]";
    }
    os << "]";
    return os.str();
}

inline std::string to_json(const EquationSpec& spec) {
    std::ostringstream os;
    os << "{\"kind\":\"" << kind_name(spec.kind) << "\",";
    if (spec.kind == Kind::general_n) os << "\"f\":\"" << f_name(spec.f) << "\",";
    auto list = [&](const std::vector<CMatrix>& ms) {
        if (ms.size() == 1) return to_json(ms[0]);
        std::string out = "[";
        for (std::size_t i = 0; i < ms.size(); ++i) {
            if (i) out += ",";
            out += to_json(ms[i]);
        }
        return out + "]";
    };
    os << "\"A\":" << list(spec.A_list) << ",\"B\":" << list(spec.B_list)
       << ",\"C\":" << to_json(spec.C) << "}";
    return os.str();
}

} // namespace steinkit
