#include "ucs/instance.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace ucs {

namespace {

constexpr int kSchemaVersion = 1;

[[noreturn]] void fail(const std::string& what) { throw InstanceError(what); }

void reject_unknown_keys(const nlohmann::json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!allowed.contains(it.key())) {
            fail("unknown key \"" + it.key() + "\" in " + where);
        }
    }
}

}  // namespace

double UcInstance::capacity_sum() const {
    double sum = 0.0;
    for (const auto& u : units) sum += u.p_max;
    return sum;
}

void validate_instance(const UcInstance& instance) {
    if (instance.units.empty()) fail("instance has no units");
    if (instance.demand.empty()) fail("instance has no demand periods");
    if (!(instance.period_hours > 0.0) || !std::isfinite(instance.period_hours)) {
        fail("period_hours must be a positive finite number");
    }
    for (std::size_t t = 0; t < instance.demand.size(); ++t) {
        const double d = instance.demand[t];
        if (!std::isfinite(d) || d < 0.0) {
            fail("demand at period " + std::to_string(t) + " must be finite and >= 0");
        }
    }
    for (std::size_t i = 0; i < instance.units.size(); ++i) {
        const UnitSpec& u = instance.units[i];
        const std::string where = "unit " + std::to_string(u.id);
        if (u.id != static_cast<int>(i)) {
            fail("unit ids must be exactly 0..N-1 in order; position " + std::to_string(i) +
                 " holds id " + std::to_string(u.id));
        }
        if (!std::isfinite(u.p_min) || u.p_min < 0.0) fail(where + ": p_min must be finite and >= 0");
        if (!std::isfinite(u.p_max) || u.p_max < u.p_min) fail(where + ": p_min > p_max");
        if (!std::isfinite(u.cost_rate) || u.cost_rate < 0.0) fail(where + ": cost_rate must be >= 0");
        if (u.min_up < 1) fail(where + ": min_up must be >= 1");
        if (u.min_down < 1) fail(where + ": min_down must be >= 1");
        if (u.initial_duration < 1) fail(where + ": initial_duration must be >= 1");
    }
}

void validate_commitment_shape(const UcInstance& instance, const CommitmentMatrix& commitment) {
    if (commitment.units != instance.unit_count() || commitment.periods != instance.period_count()) {
        std::ostringstream msg;
        msg << "commitment shape " << commitment.units << "x" << commitment.periods
            << " does not match instance " << instance.unit_count() << "x" << instance.period_count();
        fail(msg.str());
    }
    for (int i = 0; i < commitment.units; ++i) {
        for (int t = 0; t < commitment.periods; ++t) {
            const auto v = commitment.at(i, t);
            if (v != 0 && v != 1) {
                std::ostringstream msg;
                msg << "non-binary commitment entry " << static_cast<int>(v) << " at (" << i << "," << t << ")";
                fail(msg.str());
            }
        }
    }
}

UcInstance parse_instance_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        fail(std::string("instance is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) fail("instance document must be a JSON object");
    reject_unknown_keys(doc, {"version", "period_hours", "demand", "units"}, "instance");

    if (!doc.contains("version") || !doc["version"].is_number_integer()) {
        fail("missing integer \"version\" field");
    }
    if (doc["version"].get<int>() != kSchemaVersion) {
        fail("unsupported instance version " + doc["version"].dump());
    }
    if (!doc.contains("demand") || !doc["demand"].is_array()) fail("missing \"demand\" array");
    if (!doc.contains("units") || !doc["units"].is_array()) fail("missing \"units\" array");

    UcInstance instance;
    instance.period_hours = doc.value("period_hours", 1.0);
    for (const auto& d : doc["demand"]) {
        if (!d.is_number()) fail("demand entries must be numbers");
        instance.demand.push_back(d.get<double>());
    }
    for (const auto& ju : doc["units"]) {
        if (!ju.is_object()) fail("unit entries must be objects");
        reject_unknown_keys(ju,
                            {"id", "p_min", "p_max", "cost_rate", "min_up", "min_down",
                             "initial_state", "initial_duration"},
                            "unit entry");
        for (const char* key : {"id", "p_min", "p_max", "cost_rate", "min_up", "min_down"}) {
            if (!ju.contains(key)) fail(std::string("unit entry missing \"") + key + "\"");
        }
        UnitSpec u;
        u.id = ju["id"].get<int>();
        u.p_min = ju["p_min"].get<double>();
        u.p_max = ju["p_max"].get<double>();
        u.cost_rate = ju["cost_rate"].get<double>();
        u.min_up = ju["min_up"].get<int>();
        u.min_down = ju["min_down"].get<int>();
        u.initial_state = ju.value("initial_state", false);
        u.initial_duration = ju.value("initial_duration", u.min_down < 1 ? 1 : u.min_down);
        instance.units.push_back(u);
    }
    validate_instance(instance);
    return instance;
}

std::string instance_to_json(const UcInstance& instance) {
    nlohmann::json doc;
    doc["version"] = kSchemaVersion;
    doc["period_hours"] = instance.period_hours;
    doc["demand"] = instance.demand;
    doc["units"] = nlohmann::json::array();
    for (const UnitSpec& u : instance.units) {
        doc["units"].push_back({{"id", u.id},
                                {"p_min", u.p_min},
                                {"p_max", u.p_max},
                                {"cost_rate", u.cost_rate},
                                {"min_up", u.min_up},
                                {"min_down", u.min_down},
                                {"initial_state", u.initial_state},
                                {"initial_duration", u.initial_duration}});
    }
    return doc.dump(2) + "\n";
}

UcInstance load_instance(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open instance file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_instance_json(buf.str());
}

void store_instance(const UcInstance& instance, const std::filesystem::path& path) {
    validate_instance(instance);
    std::ofstream out(path);
    if (!out) fail("cannot write instance file: " + path.string());
    out << instance_to_json(instance);
}

}  // namespace ucs
