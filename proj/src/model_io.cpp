#include "prrtc/model_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace prrtc {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& msg) { throw IoError(msg); }

json parse_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail(path.string() + ": cannot open file");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        fail(path.string() + ": " + e.what());
    }
}

void write_file(const std::filesystem::path& path, const json& j) {
    std::ofstream out(path);
    if (!out) fail(path.string() + ": cannot open file for writing");
    out << j.dump(2) << '\n';
}

const json& field(const json& j, const char* key, const std::string& where) {
    auto it = j.find(key);
    if (it == j.end()) fail(where + "." + key + ": missing field");
    return *it;
}

template <typename T>
T field_as(const json& j, const char* key, const std::string& where) {
    try {
        return field(j, key, where).get<T>();
    } catch (const json::exception&) {
        fail(where + "." + key + ": wrong type");
    }
}

Vec3 vec3_from(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 3) fail(where + ": expected an array of 3 numbers");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

json vec3_to(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

PoseSpec pose_from(const json& j, const std::string& where) {
    PoseSpec p;
    p.translation = vec3_from(field(j, "translation", where), where + ".translation");
    const json& q = field(j, "quaternion", where);
    if (!q.is_array() || q.size() != 4) {
        fail(where + ".quaternion: expected an array of 4 numbers [w, x, y, z]");
    }
    p.rotation = {q[0].get<double>(), q[1].get<double>(), q[2].get<double>(), q[3].get<double>()};
    return p;
}

json pose_to(const PoseSpec& p) {
    return {{"translation", vec3_to(p.translation)},
            {"quaternion", json::array({p.rotation.w, p.rotation.x, p.rotation.y, p.rotation.z})}};
}

Sphere sphere_from(const json& j, const std::string& where) {
    return {vec3_from(field(j, "center", where), where + ".center"),
            field_as<double>(j, "radius", where)};
}

json sphere_to(const Sphere& s) { return {{"center", vec3_to(s.center)}, {"radius", s.radius}}; }

Config config_from(const json& j, const std::string& where) {
    if (!j.is_array()) fail(where + ": expected an array of numbers");
    Config q;
    q.reserve(j.size());
    for (const auto& v : j) {
        if (!v.is_number()) fail(where + ": expected an array of numbers");
        q.push_back(v.get<double>());
    }
    return q;
}

}  // namespace

RobotModel load_robot(const std::filesystem::path& path) {
    const json j = parse_file(path);
    const std::string where = path.string();
    RobotModel model;
    model.name = j.value("name", path.stem().string());

    const json& joints = field(j, "joints", where);
    if (!joints.is_array()) fail(where + ".joints: expected an array");
    for (std::size_t i = 0; i < joints.size(); ++i) {
        const std::string jw = where + ".joints[" + std::to_string(i) + "]";
        const json& definition = joints[i];
        Joint joint;
        const std::string kind = field_as<std::string>(definition, "kind", jw);
        if (kind == "revolute") {
            joint.kind = JointKind::Revolute;
        } else if (kind == "prismatic") {
            joint.kind = JointKind::Prismatic;
        } else if (kind == "fixed") {
            joint.kind = JointKind::Fixed;
        } else {
            fail(jw + ".kind: unknown joint kind '" + kind + "'");
        }
        joint.parent = field_as<int>(definition, "parent", jw);
        joint.origin = pose_from(field(definition, "origin", jw), jw + ".origin");
        if (joint.kind != JointKind::Fixed) {
            joint.axis = vec3_from(field(definition, "axis", jw), jw + ".axis");
            const json& limits = field(definition, "limits", jw);
            if (!limits.is_array() || limits.size() != 2) {
                fail(jw + ".limits: expected [lo, hi]");
            }
            joint.lo = limits[0].get<double>();
            joint.hi = limits[1].get<double>();
        }
        model.joints.push_back(joint);
    }

    const json& spheres = field(j, "spheres", where);
    if (!spheres.is_array()) fail(where + ".spheres: expected an array");
    for (std::size_t l = 0; l < spheres.size(); ++l) {
        const std::string sw = where + ".spheres[" + std::to_string(l) + "]";
        LinkSpheres ls;
        ls.coarse = sphere_from(field(spheres[l], "coarse", sw), sw + ".coarse");
        const json& fine = field(spheres[l], "fine", sw);
        if (!fine.is_array()) fail(sw + ".fine: expected an array");
        for (std::size_t k = 0; k < fine.size(); ++k) {
            ls.fine.push_back(sphere_from(fine[k], sw + ".fine[" + std::to_string(k) + "]"));
        }
        model.spheres.push_back(std::move(ls));
    }

    if (j.contains("self_pairs")) {
        const json& pairs = j["self_pairs"];
        if (!pairs.is_array()) fail(where + ".self_pairs: expected an array of [i, j] pairs");
        for (const auto& p : pairs) {
            if (!p.is_array() || p.size() != 2) {
                fail(where + ".self_pairs: expected an array of [i, j] pairs");
            }
            model.self_pairs.emplace_back(p[0].get<int>(), p[1].get<int>());
        }
    }

    try {
        model.finalize();
    } catch (const std::invalid_argument& e) {
        fail(where + ": " + e.what());
    }
    return model;
}

Scene load_scene(const std::filesystem::path& path) {
    const json j = parse_file(path);
    const std::string where = path.string();
    Scene scene;
    scene.name = j.value("name", path.stem().string());
    const json& prims = field(j, "primitives", where);
    if (!prims.is_array()) fail(where + ".primitives: expected an array");
    for (std::size_t i = 0; i < prims.size(); ++i) {
        const std::string pw = where + ".primitives[" + std::to_string(i) + "]";
        const json& p = prims[i];
        const std::string kind = field_as<std::string>(p, "kind", pw);
        if (kind == "sphere") {
            scene.primitives.push_back(SpherePrim{
                vec3_from(field(p, "center", pw), pw + ".center"),
                field_as<double>(p, "radius", pw)});
        } else if (kind == "box") {
            scene.primitives.push_back(
                BoxPrim{pose_from(field(p, "pose", pw), pw + ".pose"),
                        vec3_from(field(p, "half_extents", pw), pw + ".half_extents")});
        } else if (kind == "capsule") {
            scene.primitives.push_back(CapsulePrim{vec3_from(field(p, "a", pw), pw + ".a"),
                                                   vec3_from(field(p, "b", pw), pw + ".b"),
                                                   field_as<double>(p, "radius", pw)});
        } else {
            fail(pw + ".kind: unknown primitive kind '" + kind + "'");
        }
    }
    try {
        scene.validate();
    } catch (const std::invalid_argument& e) {
        fail(where + ": " + e.what());
    }
    return scene;
}

void ParamsPatch::apply(PlannerParams& p) const {
    if (delta) p.delta = *delta;
    if (n_cc) p.n_cc = *n_cc;
    if (workers) p.workers = *workers;
    if (max_iters_per_worker) p.max_iters_per_worker = *max_iters_per_worker;
    if (tree_capacity) p.tree_capacity = *tree_capacity;
    if (dd_radius) p.dd_radius = *dd_radius;
    if (dynamic_domain) p.dynamic_domain = *dynamic_domain;
    if (balance) p.balance = *balance;
    if (early_exit) p.early_exit = *early_exit;
    if (two_stage) p.two_stage = *two_stage;
    if (batched_cc) p.batched_cc = *batched_cc;
    if (nn_partitions) p.nn_partitions = *nn_partitions;
    if (sampler) p.sampler = *sampler;
    if (seed) p.seed = *seed;
}

const char* to_string(SamplerKind k) {
    return k == SamplerKind::Halton ? "halton" : "uniform";
}

namespace {

SamplerKind sampler_from(const std::string& s, const std::string& where) {
    if (s == "halton") return SamplerKind::Halton;
    if (s == "uniform") return SamplerKind::Uniform;
    fail(where + ": unknown sampler '" + s + "'");
}

ParamsPatch params_patch_from(const json& j, const std::string& where) {
    ParamsPatch p;
    if (j.contains("delta")) p.delta = j["delta"].get<double>();
    if (j.contains("n_cc")) p.n_cc = j["n_cc"].get<int>();
    if (j.contains("workers")) p.workers = j["workers"].get<unsigned>();
    if (j.contains("max_iters_per_worker")) {
        p.max_iters_per_worker = j["max_iters_per_worker"].get<std::uint64_t>();
    }
    if (j.contains("tree_capacity")) p.tree_capacity = j["tree_capacity"].get<std::size_t>();
    if (j.contains("dd_radius")) p.dd_radius = j["dd_radius"].get<double>();
    if (j.contains("dynamic_domain")) p.dynamic_domain = j["dynamic_domain"].get<bool>();
    if (j.contains("balance")) p.balance = j["balance"].get<bool>();
    if (j.contains("early_exit")) p.early_exit = j["early_exit"].get<bool>();
    if (j.contains("two_stage")) p.two_stage = j["two_stage"].get<bool>();
    if (j.contains("batched_cc")) p.batched_cc = j["batched_cc"].get<bool>();
    if (j.contains("nn_partitions")) p.nn_partitions = j["nn_partitions"].get<unsigned>();
    if (j.contains("sampler")) {
        p.sampler = sampler_from(j["sampler"].get<std::string>(), where + ".sampler");
    }
    if (j.contains("seed")) p.seed = j["seed"].get<std::uint64_t>();
    return p;
}

json params_patch_to(const ParamsPatch& p) {
    json j = json::object();
    if (p.delta) j["delta"] = *p.delta;
    if (p.n_cc) j["n_cc"] = *p.n_cc;
    if (p.workers) j["workers"] = *p.workers;
    if (p.max_iters_per_worker) j["max_iters_per_worker"] = *p.max_iters_per_worker;
    if (p.tree_capacity) j["tree_capacity"] = *p.tree_capacity;
    if (p.dd_radius) j["dd_radius"] = *p.dd_radius;
    if (p.dynamic_domain) j["dynamic_domain"] = *p.dynamic_domain;
    if (p.balance) j["balance"] = *p.balance;
    if (p.early_exit) j["early_exit"] = *p.early_exit;
    if (p.two_stage) j["two_stage"] = *p.two_stage;
    if (p.batched_cc) j["batched_cc"] = *p.batched_cc;
    if (p.nn_partitions) j["nn_partitions"] = *p.nn_partitions;
    if (p.sampler) j["sampler"] = to_string(*p.sampler);
    if (p.seed) j["seed"] = *p.seed;
    return j;
}

json params_to(const PlannerParams& p) {
    return {{"delta", p.delta},
            {"n_cc", p.n_cc},
            {"workers", p.workers},
            {"max_iters_per_worker", p.max_iters_per_worker},
            {"tree_capacity", p.tree_capacity},
            {"dd_radius", p.dd_radius},
            {"dynamic_domain", p.dynamic_domain},
            {"balance", p.balance},
            {"early_exit", p.early_exit},
            {"two_stage", p.two_stage},
            {"batched_cc", p.batched_cc},
            {"nn_partitions", p.nn_partitions},
            {"sampler", to_string(p.sampler)},
            {"seed", p.seed}};
}

PlannerParams params_from(const json& j, const std::string& where) {
    PlannerParams p;
    ParamsPatch patch = params_patch_from(j, where);
    patch.apply(p);
    return p;
}

}  // namespace

ProblemSpec load_problem(const std::filesystem::path& path) {
    const json j = parse_file(path);
    const std::string where = path.string();
    ProblemSpec problem;
    problem.name = j.value("name", path.stem().string());
    problem.robot = field_as<std::string>(j, "robot", where);
    problem.scene = field_as<std::string>(j, "scene", where);
    problem.start = config_from(field(j, "start", where), where + ".start");
    problem.goal = config_from(field(j, "goal", where), where + ".goal");
    if (j.contains("params")) {
        problem.params = params_patch_from(j["params"], where + ".params");
    }

    const RobotModel robot = load_robot(path.parent_path() / problem.robot);
    if (problem.start.size() != static_cast<std::size_t>(robot.dof)) {
        fail(where + ".start: dimension " + std::to_string(problem.start.size()) +
             " does not match robot dof " + std::to_string(robot.dof));
    }
    if (problem.goal.size() != static_cast<std::size_t>(robot.dof)) {
        fail(where + ".goal: dimension " + std::to_string(problem.goal.size()) +
             " does not match robot dof " + std::to_string(robot.dof));
    }
    return problem;
}

PathFile load_path_file(const std::filesystem::path& path) {
    const json j = parse_file(path);
    const std::string where = path.string();
    PathFile f;
    f.robot = field_as<std::string>(j, "robot", where);
    f.scene = field_as<std::string>(j, "scene", where);
    const json& configs = field(j, "path", where);
    if (!configs.is_array() || configs.empty()) {
        fail(where + ".path: expected a non-empty array of configurations");
    }
    for (std::size_t i = 0; i < configs.size(); ++i) {
        f.configs.push_back(config_from(configs[i], where + ".path[" + std::to_string(i) + "]"));
    }
    for (std::size_t i = 1; i < f.configs.size(); ++i) {
        if (bitwise_equal(f.configs[i - 1], f.configs[i])) {
            fail(where + ".path[" + std::to_string(i) + "]: duplicates the previous waypoint");
        }
    }
    if (j.contains("metadata")) {
        const json& m = j["metadata"];
        f.cost = m.value("cost", 0.0);
        f.timestamp = m.value("timestamp", "");
        if (m.contains("params")) f.params = params_from(m["params"], where + ".metadata.params");
    }
    return f;
}

void write_robot(const std::filesystem::path& path, const RobotModel& model) {
    json joints = json::array();
    for (const Joint& joint : model.joints) {
        json j{{"kind", joint.kind == JointKind::Revolute    ? "revolute"
                        : joint.kind == JointKind::Prismatic ? "prismatic"
                                                             : "fixed"},
               {"parent", joint.parent},
               {"origin", pose_to(joint.origin)}};
        if (joint.kind != JointKind::Fixed) {
            j["axis"] = vec3_to(joint.axis);
            j["limits"] = json::array({joint.lo, joint.hi});
        }
        joints.push_back(std::move(j));
    }
    json spheres = json::array();
    for (const LinkSpheres& ls : model.spheres) {
        json fine = json::array();
        for (const Sphere& f : ls.fine) fine.push_back(sphere_to(f));
        spheres.push_back({{"coarse", sphere_to(ls.coarse)}, {"fine", std::move(fine)}});
    }
    json pairs = json::array();
    for (const auto& [a, b] : model.self_pairs) pairs.push_back(json::array({a, b}));
    write_file(path, json{{"name", model.name},
                          {"joints", std::move(joints)},
                          {"spheres", std::move(spheres)},
                          {"self_pairs", std::move(pairs)}});
}

void write_scene(const std::filesystem::path& path, const Scene& scene) {
    json prims = json::array();
    for (const Primitive& p : scene.primitives) {
        if (const auto* s = std::get_if<SpherePrim>(&p)) {
            prims.push_back(
                {{"kind", "sphere"}, {"center", vec3_to(s->center)}, {"radius", s->radius}});
        } else if (const auto* c = std::get_if<CapsulePrim>(&p)) {
            prims.push_back({{"kind", "capsule"},
                             {"a", vec3_to(c->a)},
                             {"b", vec3_to(c->b)},
                             {"radius", c->radius}});
        } else {
            const auto& b = std::get<BoxPrim>(p);
            prims.push_back({{"kind", "box"},
                             {"pose", pose_to(b.pose)},
                             {"half_extents", vec3_to(b.half_extents)}});
        }
    }
    write_file(path, json{{"name", scene.name}, {"primitives", std::move(prims)}});
}

void write_problem(const std::filesystem::path& path, const ProblemSpec& problem) {
    json j{{"name", problem.name},
           {"robot", problem.robot},
           {"scene", problem.scene},
           {"start", problem.start},
           {"goal", problem.goal}};
    const json params = params_patch_to(problem.params);
    if (!params.empty()) j["params"] = params;
    write_file(path, j);
}

void write_path(const std::filesystem::path& path, const PathFile& file) {
    if (file.configs.empty()) fail(path.string() + ": path must contain at least one waypoint");
    for (std::size_t i = 1; i < file.configs.size(); ++i) {
        if (bitwise_equal(file.configs[i - 1], file.configs[i])) {
            fail(path.string() + ".path[" + std::to_string(i) +
                 "]: duplicates the previous waypoint");
        }
    }
    json configs = json::array();
    for (const Config& q : file.configs) configs.push_back(q);
    write_file(path, json{{"robot", file.robot},
                          {"scene", file.scene},
                          {"path", std::move(configs)},
                          {"metadata",
                           {{"cost", file.cost},
                            {"params", params_to(file.params)},
                            {"timestamp", file.timestamp}}}});
}

namespace {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string format_ms(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

}  // namespace

std::string results_csv_string(std::span<const BenchRecord> rows) {
    std::ostringstream out;
    out << "problem,status,time_ms,cost,iterations,sphere_tests,workers,seed\n";
    for (const BenchRecord& r : rows) {
        out << r.problem << ',' << to_string(r.status) << ',' << format_ms(r.time_ms) << ',';
        if (r.status == PlanStatus::Solved) out << format_double(r.cost);
        out << ',' << r.iterations << ',' << r.sphere_tests << ',' << r.workers << ',' << r.seed
            << '\n';
    }
    return out.str();
}

void write_results_csv(const std::filesystem::path& path, std::span<const BenchRecord> rows) {
    std::ofstream out(path);
    if (!out) fail(path.string() + ": cannot open file for writing");
    out << results_csv_string(rows);
}

void write_ecdf_csv(const std::filesystem::path& path,
                    std::span<const std::pair<double, double>> points) {
    std::ofstream out(path);
    if (!out) fail(path.string() + ": cannot open file for writing");
    out << "value,fraction_solved\n";
    for (const auto& [value, fraction] : points) {
        out << format_double(value) << ',' << format_double(fraction) << '\n';
    }
}

}  // namespace prrtc
