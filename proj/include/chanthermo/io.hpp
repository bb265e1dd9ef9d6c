#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "chanthermo/types.hpp"

namespace chanthermo {

/// %.17g rendering so every double round-trips through text.
inline std::string fmt17(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (std::isnan(x)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

inline nlohmann::json json_number(double x) {
    if (std::isfinite(x)) return x;
    return fmt17(x);  // "inf"/"nan" as strings; JSON has no non-finite numbers
}

inline nlohmann::json vector_to_json(const Eigen::VectorXd& v) {
    nlohmann::json arr = nlohmann::json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(json_number(v(i)));
    return arr;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::InvalidInput, "cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Eigen::MatrixXd matrix_from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) fail(ErrorCode::InvalidInput, "empty matrix");
    const auto n = rows.size();
    const auto m = rows.front().size();
    Eigen::MatrixXd mat(n, m);
    for (std::size_t j = 0; j < n; ++j) {
        if (rows[j].size() != m)
            fail(ErrorCode::InvalidInput, "ragged matrix rows");
        for (std::size_t k = 0; k < m; ++k) mat(j, k) = rows[j][k];
    }
    return mat;
}

/// Channel from JSON ({"W": [[...],...]}) or CSV (one row per line), chosen by
/// file extension (.json vs anything else).
inline ChannelMatrix load_channel(const std::string& path) {
    std::vector<std::vector<double>> rows;
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") {
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(read_file(path));
        } catch (const nlohmann::json::exception& e) {
            fail(ErrorCode::InvalidInput, std::string("JSON parse error: ") + e.what());
        }
        if (!doc.contains("W") || !doc["W"].is_array())
            fail(ErrorCode::InvalidInput, "expected top-level array field \"W\"");
        for (const auto& row : doc["W"]) {
            rows.emplace_back();
            for (const auto& x : row) rows.back().push_back(x.get<double>());
        }
    } else {
        std::istringstream in(read_file(path));
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            rows.emplace_back();
            std::istringstream ls(line);
            std::string cell;
            while (std::getline(ls, cell, ','))
                rows.back().push_back(std::stod(cell));
        }
    }
    return ChannelMatrix::validated(matrix_from_rows(rows));
}

inline Distribution load_distribution(const std::string& path,
                                      DistRole role = DistRole::Input) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::InvalidInput, std::string("JSON parse error: ") + e.what());
    }
    const nlohmann::json* arr = nullptr;
    if (doc.is_array()) arr = &doc;
    else if (doc.contains("p") && doc["p"].is_array()) arr = &doc["p"];
    else fail(ErrorCode::InvalidInput, "expected array or field \"p\"");
    Eigen::VectorXd w(arr->size());
    for (std::size_t i = 0; i < arr->size(); ++i) w(i) = (*arr)[i].get<double>();
    return Distribution::validated(w, role);
}

} // namespace chanthermo
