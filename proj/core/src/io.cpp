#include "ksc/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "ksc/channels.hpp"

namespace ksc {

namespace {

using nlohmann::json;

json parse_document(const std::string& text, const char* what) {
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded()) {
        throw std::runtime_error(std::string(what) + ": malformed JSON");
    }
    return doc;
}

CMat matrix_from_json(const json& rows, std::size_t dim, const std::string& where) {
    if (!rows.is_array() || rows.size() != dim) {
        throw std::runtime_error(where + ": matrix must have " + std::to_string(dim) + " rows");
    }
    CMat m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        const json& row = rows[i];
        if (!row.is_array() || row.size() != dim) {
            throw std::runtime_error(where + ": row " + std::to_string(i) + " must have " +
                                     std::to_string(dim) + " entries");
        }
        for (std::size_t j = 0; j < dim; ++j) {
            const json& entry = row[j];
            if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
                !entry[1].is_number()) {
                throw std::runtime_error(where + ": entry (" + std::to_string(i) + "," +
                                         std::to_string(j) + ") must be a [re, im] pair");
            }
            m(i, j) = cplx(entry[0].get<double>(), entry[1].get<double>());
        }
    }
    return m;
}

json matrix_to_json(const CMat& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) {
            row.push_back({m(i, j).real(), m(i, j).imag()});
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string read_file(const std::string& path, const char* what) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error(std::string(what) + ": file not found: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace

Scenario parse_scenario_json(const std::string& text) {
    const json doc = parse_document(text, "scenario");
    Scenario s;
    if (!doc.contains("name") || !doc["name"].is_string()) {
        throw std::runtime_error("scenario: missing string field 'name'");
    }
    s.name = doc["name"].get<std::string>();
    if (!doc.contains("dimension") || !doc["dimension"].is_number_unsigned() ||
        doc["dimension"].get<std::size_t>() == 0) {
        throw std::runtime_error("scenario: 'dimension' must be a positive integer");
    }
    s.dimension = doc["dimension"].get<std::size_t>();

    if (!doc.contains("measurements") || !doc["measurements"].is_array() ||
        doc["measurements"].empty()) {
        throw std::runtime_error("scenario: 'measurements' must be a non-empty array");
    }
    for (std::size_t i = 0; i < doc["measurements"].size(); ++i) {
        const json& meas = doc["measurements"][i];
        if (!meas.contains("label") || !meas["label"].is_string() || !meas.contains("matrix")) {
            throw std::runtime_error("scenario: measurement " + std::to_string(i) +
                                     " needs 'label' and 'matrix'");
        }
        const std::string label = meas["label"].get<std::string>();
        const CMat matrix =
            matrix_from_json(meas["matrix"], s.dimension, "scenario: measurement '" + label + "'");
        try {
            s.measurements.emplace_back(label, matrix);
        } catch (const std::invalid_argument& e) {
            throw std::runtime_error(std::string("scenario: ") + e.what());
        }
    }

    if (!doc.contains("contexts") || !doc["contexts"].is_array() || doc["contexts"].empty()) {
        throw std::runtime_error("scenario: 'contexts' must be a non-empty array");
    }
    for (const json& ctx : doc["contexts"]) {
        if (!ctx.is_array() || ctx.empty()) {
            throw std::runtime_error("scenario: each context must be a non-empty index array");
        }
        std::vector<std::size_t> indices;
        for (const json& idx : ctx) {
            if (!idx.is_number_unsigned() || idx.get<std::size_t>() >= s.measurements.size()) {
                throw std::runtime_error("scenario: context index out of range");
            }
            indices.push_back(idx.get<std::size_t>());
        }
        s.contexts.push_back(std::move(indices));
    }

    if (!doc.contains("inequality") || !doc["inequality"].is_object()) {
        throw std::runtime_error("scenario: missing object field 'inequality'");
    }
    const json& ineq = doc["inequality"];
    if (!ineq.contains("gamma") || !ineq["gamma"].is_array() ||
        ineq["gamma"].size() != s.contexts.size()) {
        throw std::runtime_error("scenario: 'inequality.gamma' must list one coefficient per context");
    }
    for (const json& g : ineq["gamma"]) {
        if (!g.is_number()) throw std::runtime_error("scenario: non-numeric gamma coefficient");
        s.inequality.gamma.push_back(g.get<double>());
    }
    if (!ineq.contains("bound") || !ineq["bound"].is_number()) {
        throw std::runtime_error("scenario: 'inequality.bound' must be a number");
    }
    s.inequality.bound = ineq["bound"].get<double>();
    if (!ineq.contains("direction") || !ineq["direction"].is_string()) {
        throw std::runtime_error("scenario: 'inequality.direction' must be \"<=\" or \">=\"");
    }
    const std::string dir = ineq["direction"].get<std::string>();
    if (dir == "<=") {
        s.inequality.direction = Direction::LessEq;
    } else if (dir == ">=") {
        s.inequality.direction = Direction::GreaterEq;
    } else {
        throw std::runtime_error("scenario: 'inequality.direction' must be \"<=\" or \">=\", got '" +
                                 dir + "'");
    }

    const Diagnostics diag = validate_scenario(s);
    if (!diag.pass) {
        throw std::runtime_error("scenario: invalid: " + diag.failures.front());
    }
    return s;
}

Scenario load_scenario_file(const std::string& path) {
    return parse_scenario_json(read_file(path, "scenario"));
}

CMat parse_state_json(const std::string& text) {
    const json doc = parse_document(text, "state");
    if (!doc.contains("dimension") || !doc["dimension"].is_number_unsigned() ||
        doc["dimension"].get<std::size_t>() == 0) {
        throw std::runtime_error("state: 'dimension' must be a positive integer");
    }
    const std::size_t dim = doc["dimension"].get<std::size_t>();
    if (!doc.contains("matrix")) throw std::runtime_error("state: missing field 'matrix'");
    const CMat rho = matrix_from_json(doc["matrix"], dim, "state");
    try {
        validate_state(rho, dim);
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(e.what());
    }
    return rho;
}

CMat load_state_file(const std::string& path) {
    return parse_state_json(read_file(path, "state"));
}

std::string scenario_to_json(const Scenario& s) {
    nlohmann::ordered_json doc;
    doc["name"] = s.name;
    doc["dimension"] = s.dimension;
    doc["measurements"] = json::array();
    for (const Observable& obs : s.measurements) {
        nlohmann::ordered_json meas;
        meas["label"] = obs.label();
        meas["matrix"] = matrix_to_json(obs.matrix());
        doc["measurements"].push_back(std::move(meas));
    }
    doc["contexts"] = s.contexts;
    doc["inequality"] = {{"gamma", s.inequality.gamma},
                         {"bound", s.inequality.bound},
                         {"direction", std::string(to_string(s.inequality.direction))}};
    return doc.dump(2);
}

std::string state_to_json(const CMat& rho) {
    nlohmann::ordered_json doc;
    doc["dimension"] = rho.rows();
    doc["matrix"] = matrix_to_json(rho);
    return doc.dump(2);
}

std::string format_significant(double v, int digits) {
    char buf[64];
    // Alternate form keeps the trailing zeros of the significant-digit count;
    // normalize the decimal separator so the output ignores the host locale.
    std::snprintf(buf, sizeof(buf), "%#.*g", digits, v);
    std::string out(buf);
    const auto comma = out.find(',');
    if (comma != std::string::npos) out[comma] = '.';
    if (!out.empty() && out.back() == '.') out.pop_back();
    return out;
}

std::string format_fixed(double v, int decimals) {
    char buf[64];
    const auto result = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed,
                                      decimals);
    return std::string(buf, result.ptr);
}

}  // namespace ksc
