#include "rkball/pointset_io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace rkball {

namespace {

using nlohmann::json;

Complex parse_complex_pair(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ValidationError(where + ": expected a [re, im] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

VectorXcd parse_vector(const json& j, Eigen::Index d, const std::string& where) {
    VectorXcd v(d);
    if (d == 1 && j.is_array() && j.size() == 2 && j[0].is_number()) {
        v(0) = parse_complex_pair(j, where);
        return v;
    }
    if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != d)
        throw ValidationError(where + ": expected " + std::to_string(d) +
                              " coordinate pairs");
    for (Eigen::Index i = 0; i < d; ++i)
        v(i) = parse_complex_pair(j[i], where + ", coordinate " + std::to_string(i));
    return v;
}

json parse_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<BallPoint> parse_points(const json& arr, Eigen::Index d, const std::string& what) {
    if (!arr.is_array() || arr.empty())
        throw ValidationError(what + ": nonempty array required");
    std::vector<BallPoint> points;
    points.reserve(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string where = what + "[" + std::to_string(i) + "]";
        try {
            points.emplace_back(parse_vector(arr[i], d, where));
        } catch (const ValidationError& e) {
            throw ValidationError(where + ": " + e.what());
        }
    }
    return points;
}

Eigen::Index parse_dim(const json& j) {
    if (!j.contains("d") || !j["d"].is_number_integer() || j["d"].get<int>() < 1)
        throw ValidationError("field \"d\" must be a positive integer");
    return j["d"].get<Eigen::Index>();
}

} // namespace

PointSet pointset_from_json(const std::string& text) {
    const json j = parse_text(text);
    const Eigen::Index d = parse_dim(j);
    if (!j.contains("points"))
        throw ValidationError("field \"points\" missing");
    return PointSet(d, parse_points(j["points"], d, "points"));
}

PointSet load_pointset(const std::string& path) {
    return pointset_from_json(read_file(path));
}

std::string pointset_to_json(const PointSet& x) {
    json points = json::array();
    for (const auto& p : x.points()) {
        if (x.dim() == 1) {
            points.push_back({p.coords()(0).real(), p.coords()(0).imag()});
        } else {
            json coords = json::array();
            for (Eigen::Index i = 0; i < x.dim(); ++i)
                coords.push_back({p.coords()(i).real(), p.coords()(i).imag()});
            points.push_back(coords);
        }
    }
    return json{{"d", x.dim()}, {"points", points}}.dump();
}

PickInstance pick_instance_from_json(const std::string& text) {
    const json j = parse_text(text);
    const Eigen::Index d = parse_dim(j);
    if (!j.contains("nodes") || !j.contains("targets"))
        throw ValidationError("fields \"nodes\" and \"targets\" required");
    PointSet nodes(d, parse_points(j["nodes"], d, "nodes"));

    const json& tgt = j["targets"];
    if (!tgt.is_array() || tgt.size() != static_cast<std::size_t>(nodes.size()))
        throw ValidationError("targets: one vector per node required");

    // Target length is read off the first entry; [re, im] means m = 1.
    std::vector<VectorXcd> targets;
    for (std::size_t i = 0; i < tgt.size(); ++i) {
        const std::string where = "targets[" + std::to_string(i) + "]";
        const json& t = tgt[i];
        if (!t.is_array() || t.empty())
            throw ValidationError(where + ": nonempty array required");
        if (t.size() == 2 && t[0].is_number()) {
            VectorXcd v(1);
            v(0) = parse_complex_pair(t, where);
            targets.push_back(v);
        } else {
            VectorXcd v(t.size());
            for (std::size_t a = 0; a < t.size(); ++a)
                v(a) = parse_complex_pair(t[a], where + "[" + std::to_string(a) + "]");
            targets.push_back(v);
        }
    }
    return PickInstance(std::move(nodes), std::move(targets));
}

PickInstance load_pick_instance(const std::string& path) {
    return pick_instance_from_json(read_file(path));
}

} // namespace rkball
