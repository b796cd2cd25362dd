// SPDX-License-Identifier: BSD-3-Clause
// Copyright (c) 2026 ltr authors

#include "ltr/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ltr/errors.hpp"

namespace ltr {

using nlohmann::json;

double PlannerParams::resolution_or_default(const Workspace& ws) const {
    if (resolution) {
        return *resolution;
    }
    return 0.01 * std::min(ws.upper.x - ws.lower.x, ws.upper.y - ws.lower.y);
}

namespace {

[[noreturn]] void parse_fail(const std::string& field, const std::string& what) {
    throw ScenarioParseError("scenario field '" + field + "': " + what);
}

void check_keys(const json& j, const std::string& field, std::initializer_list<const char*> required,
                std::initializer_list<const char*> optional = {}) {
    if (!j.is_object()) {
        parse_fail(field, "expected an object");
    }
    std::set<std::string> allowed;
    for (const char* k : required) {
        allowed.insert(k);
        if (!j.contains(k)) {
            parse_fail(field.empty() ? k : field + "." + k, "missing");
        }
    }
    for (const char* k : optional) {
        allowed.insert(k);
    }
    for (const auto& [k, v] : j.items()) {
        if (!allowed.contains(k)) {
            parse_fail(field.empty() ? k : field + "." + k, "unknown key");
        }
    }
}

double number(const json& j, const std::string& field) {
    if (!j.is_number()) {
        parse_fail(field, "expected a number");
    }
    return j.get<double>();
}

std::uint64_t integer(const json& j, const std::string& field) {
    if (!j.is_number_unsigned()) {
        parse_fail(field, "expected a non-negative integer");
    }
    return j.get<std::uint64_t>();
}

std::vector<double> numbers(const json& j, const std::string& field) {
    if (!j.is_array()) {
        parse_fail(field, "expected an array of numbers");
    }
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(number(j[i], field + "[" + std::to_string(i) + "]"));
    }
    return out;
}

geom::Vec2 vec2(const json& j, const std::string& field) {
    auto v = numbers(j, field);
    if (v.size() != 2) {
        parse_fail(field, "expected [x, y]");
    }
    return {v[0], v[1]};
}

geom::Pose pose(const json& j, const std::string& field) {
    check_keys(j, field, {"x", "y", "theta"});
    return {number(j["x"], field + ".x"), number(j["y"], field + ".y"), number(j["theta"], field + ".theta")};
}

geom::Shape shape(const json& j, const std::string& field) {
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) {
        parse_fail(field + ".type", "expected \"disc\" or \"polygon\"");
    }
    const auto type = j["type"].get<std::string>();
    if (type == "disc") {
        check_keys(j, field, {"type", "radius"});
        return geom::Disc{number(j["radius"], field + ".radius")};
    }
    if (type == "polygon") {
        check_keys(j, field, {"type", "vertices"});
        if (!j["vertices"].is_array()) {
            parse_fail(field + ".vertices", "expected an array");
        }
        geom::Polygon poly;
        for (std::size_t i = 0; i < j["vertices"].size(); ++i) {
            poly.vertices.push_back(vec2(j["vertices"][i], field + ".vertices[" + std::to_string(i) + "]"));
        }
        return poly;
    }
    parse_fail(field + ".type", "expected \"disc\" or \"polygon\"");
}

json to_json(const geom::Pose& p) { return json{{"x", p.x}, {"y", p.y}, {"theta", p.theta}}; }

json to_json(const geom::Shape& s) {
    if (const auto* d = std::get_if<geom::Disc>(&s)) {
        return json{{"type", "disc"}, {"radius", d->radius}};
    }
    json verts = json::array();
    for (const auto& v : std::get<geom::Polygon>(s).vertices) {
        verts.push_back(json::array({v.x, v.y}));
    }
    return json{{"type", "polygon"}, {"vertices", verts}};
}

template <class F>
auto validated(F&& f) {
    try {
        return f();
    } catch (const ContractViolation& e) {
        throw ScenarioValidationError(e.what());
    }
}

}  // namespace

Scenario load_scenario(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ScenarioParseError(std::string("scenario is not valid JSON: ") + e.what());
    }
    check_keys(doc, "", {"bounds", "robot", "static_obstacles", "objects", "tasks", "params"});

    check_keys(doc["bounds"], "bounds", {"lower", "upper"});
    const Workspace ws{vec2(doc["bounds"]["lower"], "bounds.lower"), vec2(doc["bounds"]["upper"], "bounds.upper")};

    const json& jr = doc["robot"];
    if (!jr.is_object() || !jr.contains("kind") || !jr["kind"].is_string()) {
        parse_fail("robot.kind", "expected \"point\", \"disc\" or \"planar_arm\"");
    }
    RobotModel robot;
    const auto kind = jr["kind"].get<std::string>();
    if (kind == "point") {
        check_keys(jr, "robot", {"kind", "start"});
        robot.kind = RobotKind::point;
    } else if (kind == "disc") {
        check_keys(jr, "robot", {"kind", "radius", "start"});
        robot.kind = RobotKind::disc;
        robot.radius = number(jr["radius"], "robot.radius");
    } else if (kind == "planar_arm") {
        check_keys(jr, "robot", {"kind", "links", "base", "start"});
        robot.kind = RobotKind::planar_arm;
        robot.links = numbers(jr["links"], "robot.links");
        robot.base = pose(jr["base"], "robot.base");
    } else {
        parse_fail("robot.kind", "expected \"point\", \"disc\" or \"planar_arm\"");
    }
    Config start(numbers(jr["start"], "robot.start"));

    if (!doc["static_obstacles"].is_array()) {
        parse_fail("static_obstacles", "expected an array");
    }
    std::vector<StaticObstacle> statics;
    for (std::size_t i = 0; i < doc["static_obstacles"].size(); ++i) {
        const std::string f = "static_obstacles[" + std::to_string(i) + "]";
        const json& js = doc["static_obstacles"][i];
        check_keys(js, f, {"shape", "pose"});
        statics.push_back({shape(js["shape"], f + ".shape"), pose(js["pose"], f + ".pose")});
    }

    if (!doc["objects"].is_array()) {
        parse_fail("objects", "expected an array");
    }
    std::vector<WorldObject> objects;
    for (std::size_t i = 0; i < doc["objects"].size(); ++i) {
        const std::string f = "objects[" + std::to_string(i) + "]";
        const json& jo = doc["objects"][i];
        check_keys(jo, f, {"id", "shape", "pose"});
        if (!jo["id"].is_string()) {
            parse_fail(f + ".id", "expected a string");
        }
        objects.push_back({jo["id"].get<std::string>(), shape(jo["shape"], f + ".shape"),
                           pose(jo["pose"], f + ".pose")});
    }

    if (!doc["tasks"].is_array()) {
        parse_fail("tasks", "expected an array");
    }
    std::vector<Task> tasks;
    for (std::size_t i = 0; i < doc["tasks"].size(); ++i) {
        const std::string f = "tasks[" + std::to_string(i) + "]";
        const json& jt = doc["tasks"][i];
        check_keys(jt, f, {"object", "target"});
        if (!jt["object"].is_string()) {
            parse_fail(f + ".object", "expected a string");
        }
        tasks.push_back({jt["object"].get<std::string>(), pose(jt["target"], f + ".target")});
    }

    const json& jp = doc["params"];
    check_keys(jp, "params", {"step", "budget_s", "max_iters", "seed"}, {"gamma", "resolution", "prm_query_interval"});
    PlannerParams params;
    params.step = number(jp["step"], "params.step");
    params.budget_s = number(jp["budget_s"], "params.budget_s");
    params.max_iters = integer(jp["max_iters"], "params.max_iters");
    params.seed = integer(jp["seed"], "params.seed");
    if (jp.contains("gamma")) {
        params.gamma = number(jp["gamma"], "params.gamma");
    }
    if (jp.contains("resolution")) {
        params.resolution = number(jp["resolution"], "params.resolution");
    }
    if (jp.contains("prm_query_interval")) {
        params.prm_query_interval = integer(jp["prm_query_interval"], "params.prm_query_interval");
    }

    World world = validated([&] { return World(ws, std::move(statics), std::move(objects), robot); });

    auto invalid = [](const std::string& what) { throw ScenarioValidationError(what); };
    if (tasks.empty()) {
        invalid("tasks non-empty");
    }
    for (const auto& t : tasks) {
        if (!world.has_object(t.object_id)) {
            invalid("task refers to unknown object '" + t.object_id + "'");
        }
        const auto p = t.target.position();
        if (p.x < ws.lower.x || p.x > ws.upper.x || p.y < ws.lower.y || p.y > ws.upper.y) {
            invalid("task target for '" + t.object_id + "' outside workspace");
        }
    }
    if (start.dim() != robot.dim()) {
        invalid("robot.start dimension does not match the robot");
    }
    if (!(params.budget_s > 0.0)) {
        invalid("params.budget_s must be positive");
    }
    if (!(params.step > 0.0)) {
        invalid("params.step must be positive");
    }
    if (params.max_iters == 0) {
        invalid("params.max_iters must be positive");
    }
    if (params.resolution && !(*params.resolution > 0.0)) {
        invalid("params.resolution must be positive");
    }
    if (params.prm_query_interval && *params.prm_query_interval == 0) {
        invalid("params.prm_query_interval must be positive");
    }
    return Scenario{std::move(world), std::move(start), std::move(tasks), params};
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ScenarioParseError("cannot open scenario file " + path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return load_scenario(buf.str());
}

std::string serialize_scenario(const Scenario& s) {
    const World& w = s.world;
    json doc;
    doc["bounds"] = json{{"lower", json::array({w.workspace().lower.x, w.workspace().lower.y})},
                         {"upper", json::array({w.workspace().upper.x, w.workspace().upper.y})}};
    const RobotModel& r = w.robot();
    json jr{{"start", s.start.coords()}};
    switch (r.kind) {
    case RobotKind::point:
        jr["kind"] = "point";
        break;
    case RobotKind::disc:
        jr["kind"] = "disc";
        jr["radius"] = r.radius;
        break;
    case RobotKind::planar_arm:
        jr["kind"] = "planar_arm";
        jr["links"] = r.links;
        jr["base"] = to_json(r.base);
        break;
    }
    doc["robot"] = jr;
    doc["static_obstacles"] = json::array();
    for (const auto& o : w.static_obstacles()) {
        doc["static_obstacles"].push_back(json{{"shape", to_json(o.shape)}, {"pose", to_json(o.pose)}});
    }
    doc["objects"] = json::array();
    for (const auto& o : w.objects()) {
        doc["objects"].push_back(json{{"id", o.id}, {"shape", to_json(o.shape)}, {"pose", to_json(o.pose)}});
    }
    doc["tasks"] = json::array();
    for (const auto& t : s.tasks) {
        doc["tasks"].push_back(json{{"object", t.object_id}, {"target", to_json(t.target)}});
    }
    json jp{{"step", s.params.step},
            {"budget_s", s.params.budget_s},
            {"max_iters", s.params.max_iters},
            {"seed", s.params.seed}};
    if (s.params.gamma) {
        jp["gamma"] = *s.params.gamma;
    }
    if (s.params.resolution) {
        jp["resolution"] = *s.params.resolution;
    }
    if (s.params.prm_query_interval) {
        jp["prm_query_interval"] = *s.params.prm_query_interval;
    }
    doc["params"] = jp;
    return doc.dump(2) + "\n";
}

}  // namespace ltr
