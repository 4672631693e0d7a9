#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dfi/pmf.hpp"

namespace dfi {

namespace {

void check_entry(double v) {
    if (!std::isfinite(v)) throw PmfParseError("pmf file: non-finite entry");
    if (v < 0.0) throw PmfParseError("pmf file: negative entry");
}

Pmf parse_json_pmf(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw PmfParseError(std::string("pmf file: invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("values") || !doc["values"].is_array()) {
        throw PmfParseError("pmf file: expected {\"values\": [...], \"tail_mass_bound\": x}");
    }
    std::vector<double> values;
    values.reserve(doc["values"].size());
    for (const auto& item : doc["values"]) {
        if (!item.is_number()) throw PmfParseError("pmf file: values must be numbers");
        const double v = item.get<double>();
        check_entry(v);
        values.push_back(v);
    }
    double tail = 0.0;
    if (doc.contains("tail_mass_bound")) {
        if (!doc["tail_mass_bound"].is_number()) {
            throw PmfParseError("pmf file: tail_mass_bound must be a number");
        }
        tail = doc["tail_mass_bound"].get<double>();
        check_entry(tail);
    }
    return Pmf(std::move(values), tail);
}

Pmf parse_plain_pmf(std::string_view text) {
    std::vector<double> values;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        // Tolerate CRLF input and blank lines.
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos) continue;
        const auto last = line.find_last_not_of(" \t");
        const std::string token = line.substr(first, last - first + 1);
        try {
            std::size_t used = 0;
            const double v = std::stod(token, &used);
            if (used != token.size()) throw std::invalid_argument("trailing");
            check_entry(v);
            values.push_back(v);
        } catch (const PmfParseError&) {
            throw;
        } catch (const std::exception&) {
            throw PmfParseError("pmf file: line " + std::to_string(line_no) +
                                " is not a probability: '" + token + "'");
        }
    }
    if (values.empty()) throw PmfParseError("pmf file: no entries");
    return Pmf(std::move(values), 0.0);
}

}  // namespace

Pmf parse_pmf_text(std::string_view text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) throw PmfParseError("pmf file: empty");
    if (text[first] == '{') return parse_json_pmf(text);
    return parse_plain_pmf(text);
}

Pmf read_pmf_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw PmfParseError("pmf file: cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_pmf_text(buffer.str());
}

std::string pmf_to_json(const Pmf& p) {
    nlohmann::ordered_json doc;
    doc["values"] = p.values();
    doc["tail_mass_bound"] = p.tail_mass_bound();
    return doc.dump();
}

}  // namespace dfi
