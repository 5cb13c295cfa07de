#include "sraembed/io.hpp"

#include "sraembed/errors.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

namespace sraembed::io {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, ',')) out.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        rows.push_back(split_csv_line(line));
    }
    return rows;
}

double parse_number(const std::string& cell) {
    if (cell.empty()) throw Error(ErrorKind::ParseError, "empty numeric cell");
    char* end = nullptr;
    const double v = std::strtod(cell.c_str(), &end);
    if (end != cell.c_str() + cell.size())
        throw Error(ErrorKind::ParseError, "not a number: '" + cell + "'");
    return v;
}

Json number_or_null(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

Json optional_number(const std::optional<double>& v) {
    if (v) return number_or_null(*v);
    return nullptr;
}

} // namespace

FiniteMetricSpace parse_space_json(const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::ParseError, e.what());
    }
    if (!doc.is_object() || !doc.contains("matrix"))
        throw Error(ErrorKind::ParseError, "expected an object with a \"matrix\" field");
    std::vector<std::vector<double>> matrix;
    try {
        for (const auto& row : doc.at("matrix")) {
            std::vector<double> r;
            for (const auto& v : row) r.push_back(v.get<double>());
            matrix.push_back(std::move(r));
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::ParseError, std::string("matrix: ") + e.what());
    }
    std::optional<std::vector<std::string>> labels;
    if (doc.contains("labels") && !doc["labels"].is_null()) {
        labels.emplace();
        for (const auto& l : doc["labels"]) labels->push_back(l.is_string() ? l.get<std::string>() : l.dump());
    }
    return validate_metric(matrix, std::move(labels));
}

FiniteMetricSpace parse_space_csv(const std::string& text) {
    const auto rows = csv_rows(text);
    if (rows.empty()) throw Error(ErrorKind::ParseError, "empty CSV input");
    std::vector<std::vector<double>> matrix;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        std::vector<double> row;
        for (const auto& cell : rows[r]) row.push_back(parse_number(cell));
        matrix.push_back(std::move(row));
    }
    if (matrix.size() != rows[0].size())
        throw Error(ErrorKind::NotSquare, "CSV has " + std::to_string(rows[0].size()) + " labels but " +
                                              std::to_string(matrix.size()) + " rows");
    return validate_metric(matrix, rows[0]);
}

FiniteMetricSpace parse_space(const std::string& text) {
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        return c == '{' ? parse_space_json(text) : parse_space_csv(text);
    }
    throw Error(ErrorKind::ParseError, "empty input");
}

FiniteMetricSpace read_space(const std::string& path) { return parse_space(read_file(path)); }

std::string space_to_json(const FiniteMetricSpace& space) {
    Json doc;
    doc["labels"] = space.labels();
    Json matrix = Json::array();
    for (std::size_t i = 0; i < space.size(); ++i) {
        const auto row = space.row(i);
        matrix.push_back(std::vector<double>(row.begin(), row.end()));
    }
    doc["matrix"] = std::move(matrix);
    return dump(doc);
}

namespace {

std::string format17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

std::string space_to_csv(const FiniteMetricSpace& space) {
    std::ostringstream os;
    for (std::size_t i = 0; i < space.size(); ++i) os << (i ? "," : "") << space.label(i);
    os << '\n';
    for (std::size_t i = 0; i < space.size(); ++i) {
        for (std::size_t j = 0; j < space.size(); ++j) os << (j ? "," : "") << format17(space.d(i, j));
        os << '\n';
    }
    return os.str();
}

std::string embedding_to_csv(const FiniteMetricSpace& space, const PointMap& map) {
    std::ostringstream os;
    os << "label";
    for (std::size_t c = 0; c < map.dim(); ++c) os << ",c" << c;
    os << '\n';
    for (std::size_t i = 0; i < map.size(); ++i) {
        os << space.label(map.domain()[i].value);
        for (double v : map.row(i)) os << ',' << format17(v);
        os << '\n';
    }
    return os.str();
}

PointMap parse_embedding_csv(const std::string& text, const FiniteMetricSpace& space) {
    const auto rows = csv_rows(text);
    if (rows.empty() || rows[0].empty() || rows[0][0] != "label")
        throw Error(ErrorKind::ParseError, "embedding CSV must start with a 'label,...' header");
    const std::size_t dim = rows[0].size() - 1;
    std::map<std::size_t, std::vector<double>> by_point;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        if (rows[r].size() != dim + 1)
            throw Error(ErrorKind::ParseError, "row " + std::to_string(r) + " has the wrong width");
        const auto id = space.find_label(rows[r][0]);
        if (!id) throw Error(ErrorKind::ParseError, "unknown label '" + rows[r][0] + "'");
        std::vector<double> values;
        for (std::size_t c = 1; c <= dim; ++c) values.push_back(parse_number(rows[r][c]));
        if (!by_point.emplace(id->value, std::move(values)).second)
            throw Error(ErrorKind::ParseError, "duplicate label '" + rows[r][0] + "'");
    }
    std::vector<std::size_t> ids;
    std::vector<double> values;
    for (auto& [id, row] : by_point) {
        ids.push_back(id);
        values.insert(values.end(), row.begin(), row.end());
    }
    return PointMap(Subset::from_indices(ids), dim, std::move(values));
}

GenSpec parse_gen_spec(const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::InvalidSpec, e.what());
    }
    GenSpec spec;
    try {
        spec.family = family_from_string(doc.at("family").get<std::string>());
        spec.n = doc.at("n").get<std::size_t>();
        if (doc.contains("exponent") && !doc["exponent"].is_null()) spec.exponent = doc["exponent"].get<double>();
        if (doc.contains("dim") && !doc["dim"].is_null()) spec.dim = doc["dim"].get<std::size_t>();
        if (doc.contains("seed") && !doc["seed"].is_null()) spec.seed = doc["seed"].get<std::uint64_t>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::InvalidSpec, e.what());
    }
    spec.validate();
    return spec;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write '" + path + "'");
    out << contents;
}

Json labels_json(const FiniteMetricSpace& space, const Subset& subset) {
    Json arr = Json::array();
    for (PointId p : subset) arr.push_back(space.label(p.value));
    return arr;
}

Json to_json(const CheckRecord& check) {
    Json j;
    j["name"] = check.name;
    j["bound"] = number_or_null(check.bound);
    j["measured"] = number_or_null(check.measured);
    j["direction"] = check.direction == Direction::AtMost ? "<=" : ">=";
    j["pass"] = check.pass;
    return j;
}

Json to_json(const FiniteMetricSpace& space, const AuditReport& report) {
    Json j;
    j["lipschitz"] = number_or_null(report.lipschitz);
    j["colipschitz"] = number_or_null(report.colipschitz);
    j["distortion"] = number_or_null(report.distortion);
    j["witness_max"] = {space.label(report.witness_max.first.value),
                        space.label(report.witness_max.second.value)};
    j["witness_min"] = {space.label(report.witness_min.first.value),
                        space.label(report.witness_min.second.value)};
    Json checks = Json::array();
    for (const auto& c : report.checks) checks.push_back(to_json(c));
    j["checks"] = std::move(checks);
    return j;
}

Json to_json(const PipelineConstants& constants) {
    Json j;
    j["k"] = constants.k;
    j["alpha"] = constants.alpha;
    Json levels = Json::array();
    for (const auto& lv : constants.levels) {
        Json l;
        l["k"] = lv.k;
        l["alpha"] = lv.alpha;
        l["points"] = lv.points;
        l["base"] = lv.base;
        if (lv.base) {
            l["base_net_size"] = lv.base_net_size;
        } else {
            l["core_size"] = lv.core_size;
            l["degenerate"] = lv.degenerate;
            l["theta"] = lv.theta;
            l["zeta"] = lv.zeta;
            l["M"] = lv.M;
            l["j"] = lv.j;
            l["nbar"] = lv.nbar;
            l["chart_distortion"] = lv.chart_distortion;
            l["input_dim"] = lv.input_dim;
        }
        l["output_dim"] = lv.output_dim;
        l["scale"] = lv.scale;
        l["claimed_distortion"] = number_or_null(lv.claimed_distortion);
        l["measured_lipschitz"] = optional_number(lv.measured_lipschitz);
        l["measured_colipschitz"] = optional_number(lv.measured_colipschitz);
        l["measured_distortion"] = optional_number(lv.measured_distortion);
        l["theoretical_bound"] = number_or_null(lv.theoretical_bound);
        l["warnings"] = lv.warnings;
        levels.push_back(std::move(l));
    }
    j["levels"] = std::move(levels);
    return j;
}

Json to_json(const FiniteMetricSpace& space, const CriticalRadiusEntry& entry) {
    Json j;
    j["point"] = space.label(entry.point.value);
    j["radius"] = entry.radius;
    j["witness"] = entry.witness ? labels_json(space, *entry.witness) : Json(nullptr);
    return j;
}

Json to_json(const FiniteMetricSpace& space, const DoublingCertificate& cert) {
    Json j;
    j["lambda"] = cert.lambda;
    j["center"] = space.label(cert.center.value);
    j["radius"] = cert.radius;
    j["cover"] = labels_json(space, cert.cover);
    return j;
}

Json assouad_debug_json(const FiniteMetricSpace& space, const AssouadMap& result) {
    Json j;
    j["M"] = result.M;
    j["j"] = result.j;
    j["nbar"] = result.nbar;
    j["zeta"] = result.zeta;
    j["distortion"] = result.distortion;
    Json nets = Json::array();
    const auto& coloring = result.coloring;
    for (std::size_t i = 0; i < coloring.nets.size(); ++i) {
        Json net;
        net["k"] = coloring.nets[i].k;
        net["members"] = labels_json(space, coloring.nets[i].members);
        net["colors"] = coloring.colors[i];
        nets.push_back(std::move(net));
    }
    j["nets"] = std::move(nets);
    Json norms = Json::object();
    const std::size_t bd = result.block_dim();
    for (std::size_t x = 0; x < space.size(); ++x) {
        Json per_block = Json::array();
        const auto row = result.phi.row(x);
        for (std::size_t q = 0; q < result.block_count(); ++q)
            per_block.push_back(euclidean_norm(row.subspan(q * bd, bd)));
        norms[space.label(x)] = std::move(per_block);
    }
    j["block_norms"] = std::move(norms);
    j["warnings"] = result.warnings;
    return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

} // namespace sraembed::io
