#include "gleak/io.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace gleak {

namespace {

nlohmann::json parse_json_stream(std::istream& in) {
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error(e.what());
    }
}

std::vector<std::string> string_array(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_array())
        throw parse_error(std::string("missing or non-array field '") + key + "'");
    std::vector<std::string> out;
    for (const auto& v : j[key]) {
        if (!v.is_string()) throw parse_error(std::string("'") + key + "' entries must be strings");
        out.push_back(v.get<std::string>());
    }
    return out;
}

} // namespace

JointSource parse_joint_json(std::istream& in) {
    nlohmann::json j = parse_json_stream(in);
    auto xs = string_array(j, "x_labels");
    auto ys = string_array(j, "y_labels");
    if (!j.contains("pxy") || !j["pxy"].is_array())
        throw parse_error("missing or non-array field 'pxy'");
    std::vector<std::vector<double>> pxy;
    for (const auto& row : j["pxy"]) {
        if (!row.is_array()) throw parse_error("'pxy' rows must be arrays");
        std::vector<double> r;
        for (const auto& v : row) {
            if (!v.is_number()) throw parse_error("'pxy' entries must be numbers");
            r.push_back(v.get<double>());
        }
        pxy.push_back(std::move(r));
    }
    try {
        return make_joint(std::move(xs), std::move(ys), std::move(pxy));
    } catch (const validation_error& e) {
        throw parse_error(e.what());
    }
}

JointSource parse_joint_csv(std::istream& in) {
    std::string line;
    long lineno = 0;

    auto next_line = [&](std::string& out) {
        while (std::getline(in, line)) {
            ++lineno;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            out = line;
            return true;
        }
        return false;
    };

    std::string header;
    if (!next_line(header)) throw parse_error("empty CSV input");
    if (header != "x,y,p") throw parse_error("expected header 'x,y,p'", lineno);

    std::vector<std::string> xs, ys;
    std::map<std::pair<std::size_t, std::size_t>, double> cells;
    auto intern = [](std::vector<std::string>& pool, const std::string& s) {
        for (std::size_t i = 0; i < pool.size(); ++i)
            if (pool[i] == s) return i;
        pool.push_back(s);
        return pool.size() - 1;
    };

    std::string row;
    while (next_line(row)) {
        std::istringstream ss(row);
        std::string x, y, pstr;
        if (!std::getline(ss, x, ',') || !std::getline(ss, y, ',') || !std::getline(ss, pstr))
            throw parse_error("expected 'x,y,p' triple", lineno);
        double p;
        try {
            std::size_t pos = 0;
            p = std::stod(pstr, &pos);
            while (pos < pstr.size() && std::isspace(static_cast<unsigned char>(pstr[pos]))) ++pos;
            if (pos != pstr.size()) throw std::invalid_argument("trailing junk");
        } catch (const std::exception&) {
            throw parse_error("bad probability '" + pstr + "'", lineno);
        }
        auto key = std::make_pair(intern(xs, x), intern(ys, y));
        if (cells.count(key))
            throw parse_error("duplicate cell (" + x + "," + y + ")", lineno);
        cells[key] = p;
    }
    if (xs.empty()) throw parse_error("no data rows");

    std::vector<std::vector<double>> pxy(xs.size(), std::vector<double>(ys.size(), 0.0));
    for (const auto& [key, p] : cells) pxy[key.first][key.second] = p;
    try {
        return make_joint(std::move(xs), std::move(ys), std::move(pxy));
    } catch (const validation_error& e) {
        throw parse_error(e.what());
    }
}

Distribution parse_distribution_json(std::istream& in) {
    nlohmann::json j = parse_json_stream(in);
    auto labels = string_array(j, "labels");
    if (!j.contains("probs") || !j["probs"].is_array())
        throw parse_error("missing or non-array field 'probs'");
    std::vector<double> probs;
    for (const auto& v : j["probs"]) {
        if (!v.is_number()) throw parse_error("'probs' entries must be numbers");
        probs.push_back(v.get<double>());
    }
    try {
        return make_distribution(std::move(labels), std::move(probs));
    } catch (const validation_error& e) {
        throw parse_error(e.what());
    }
}

namespace {

SourceFormat sniff(const std::string& path, std::istream& in) {
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") return SourceFormat::Json;
    if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv") return SourceFormat::Csv;
    int c = in.peek();
    while (c == ' ' || c == '\n' || c == '\t' || c == '\r') {
        in.get();
        c = in.peek();
    }
    return c == '{' ? SourceFormat::Json : SourceFormat::Csv;
}

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw parse_error("cannot open '" + path + "'");
    return f;
}

} // namespace

JointSource load_joint(const std::string& path, SourceFormat format) {
    auto f = open_or_throw(path);
    if (format == SourceFormat::Auto) format = sniff(path, f);
    return format == SourceFormat::Json ? parse_joint_json(f) : parse_joint_csv(f);
}

Distribution load_distribution(const std::string& path, SourceFormat format) {
    auto f = open_or_throw(path);
    if (format == SourceFormat::Auto) format = sniff(path, f);
    if (format == SourceFormat::Csv) return marginal_x(parse_joint_csv(f));

    nlohmann::json j = parse_json_stream(f);
    if (j.contains("labels")) {
        std::istringstream again(j.dump());
        return parse_distribution_json(again);
    }
    std::istringstream again(j.dump());
    return marginal_x(parse_joint_json(again));
}

std::string file_checksum(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw parse_error("cannot open '" + path + "'");
    std::uint64_t h = 1469598103934665603ULL;
    char c;
    while (f.get(c)) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace gleak
