#include "monodec/trace_io.hpp"

#include <charconv>
#include <cstdint>

#include "monodec/errors.hpp"

namespace monodec {

using nlohmann::json;

namespace {

constexpr int kMaxRepeatDepth = 32;
constexpr std::size_t kMaxExpandedAccesses = 16u << 20;  // per trace

Mode parse_mode(const json& value, const std::string& location) {
    if (!value.is_string()) {
        throw SchemaError("access mode must be a string", location);
    }
    const auto& s = value.get_ref<const std::string&>();
    if (s == "R") return Mode::Read;
    if (s == "W") return Mode::Write;
    throw SchemaError("unknown access mode \"" + s + "\" (expected \"R\" or \"W\")",
                      location);
}

void expand_items(const json& items, int depth, std::vector<Access>& out,
                  const std::string& location) {
    if (depth > kMaxRepeatDepth) {
        throw LimitError("repeat blocks nested deeper than " +
                         std::to_string(kMaxRepeatDepth) + " at " + location);
    }
    if (!items.is_array()) {
        throw SchemaError("accesses must be an array", location);
    }
    for (std::size_t i = 0; i < items.size(); ++i) {
        const json& item = items[i];
        const std::string loc = location + "[" + std::to_string(i) + "]";
        if (!item.is_array() || item.size() != 2) {
            throw SchemaError("access item must be a two-element array", loc);
        }
        if (!item[0].is_number_integer()) {
            throw SchemaError("first element of an access item must be an integer", loc);
        }
        if (item[1].is_array()) {
            const std::int64_t count = item[0].get<std::int64_t>();
            if (count < 1) {
                throw SchemaError("repeat count must be >= 1, got " +
                                  std::to_string(count), loc);
            }
            std::vector<Access> block;
            expand_items(item[1], depth + 1, block, loc);
            if (!block.empty() &&
                static_cast<std::size_t>(count) >
                    (kMaxExpandedAccesses - out.size()) / block.size()) {
                throw LimitError("expanded trace exceeds " +
                                 std::to_string(kMaxExpandedAccesses) +
                                 " accesses at " + loc);
            }
            for (std::int64_t r = 0; r < count; ++r) {
                out.insert(out.end(), block.begin(), block.end());
            }
        } else {
            Access a;
            a.entity = item[0].get<std::int64_t>();
            a.mode = parse_mode(item[1], loc);
            if (out.size() + 1 > kMaxExpandedAccesses) {
                throw LimitError("expanded trace exceeds " +
                                 std::to_string(kMaxExpandedAccesses) +
                                 " accesses at " + loc);
            }
            out.push_back(a);
        }
    }
}

Functionality parse_functionality(const std::string& name, const json& obj) {
    const std::string loc = "functionalities." + name;
    if (!obj.is_object()) {
        throw SchemaError("functionality must be an object with a \"traces\" list", loc);
    }
    auto traces_it = obj.find("traces");
    if (traces_it == obj.end() || !traces_it->is_array()) {
        throw SchemaError("functionality must contain a \"traces\" array", loc);
    }
    Functionality f;
    f.name = name;
    std::size_t index = 0;
    for (const json& t : *traces_it) {
        const std::string tloc = loc + ".traces[" + std::to_string(index++) + "]";
        if (!t.is_object()) {
            throw SchemaError("trace must be an object", tloc);
        }
        Trace trace;
        auto id_it = t.find("id");
        if (id_it == t.end() || !id_it->is_number_integer()) {
            throw SchemaError("trace must carry an integer \"id\"", tloc);
        }
        trace.id = id_it->get<std::int64_t>();
        if (trace.id < 0) {
            throw SchemaError("trace id must be non-negative", tloc);
        }
        auto acc_it = t.find("accesses");
        if (acc_it == t.end()) {
            throw SchemaError("trace must carry an \"accesses\" list", tloc);
        }
        trace.accesses = expand_compressed_accesses(*acc_it);
        f.traces.push_back(std::move(trace));
    }
    return f;
}

void parse_entities_map(const json& obj, Monolith& m) {
    if (!obj.is_object()) {
        throw SchemaError("\"entities\" must map entity ids to display names",
                          "entities");
    }
    for (const auto& [key, value] : obj.items()) {
        EntityId id = 0;
        const auto* first = key.data();
        const auto* last = key.data() + key.size();
        auto [ptr, ec] = std::from_chars(first, last, id);
        if (ec != std::errc() || ptr != last) {
            throw SchemaError("entity key \"" + key + "\" is not an integer",
                              "entities");
        }
        if (!value.is_string()) {
            throw SchemaError("entity display name must be a string",
                              "entities." + key);
        }
        m.entities[id] = value.get<std::string>();
    }
}

} // namespace

std::vector<Access> expand_compressed_accesses(const nlohmann::json& items) {
    std::vector<Access> out;
    expand_items(items, 1, out, "accesses");
    return out;
}

Monolith parse_trace_file(std::string_view text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(e.what(), e.byte);
    }
    if (!root.is_object()) {
        throw SchemaError("top-level value must be an object", "$");
    }

    Monolith m;
    if (auto it = root.find("functionalities"); it != root.end()) {
        if (auto ent = root.find("entities"); ent != root.end()) {
            parse_entities_map(*ent, m);
        }
        if (!it->is_object()) {
            throw SchemaError("\"functionalities\" must be an object", "functionalities");
        }
        for (const auto& [name, obj] : it->items()) {
            m.functionalities.emplace(name, parse_functionality(name, obj));
        }
    } else {
        // Legacy flat form: every top-level entry is a functionality.
        for (const auto& [name, obj] : root.items()) {
            m.functionalities.emplace(name, parse_functionality(name, obj));
        }
    }

    // The entities map covers every accessed id; ids seen only in traces get
    // no display name.
    for (const auto& [name, f] : m.functionalities) {
        for (const Trace& t : f.traces) {
            for (const Access& a : t.accesses) {
                m.entities.try_emplace(a.entity, std::nullopt);
            }
        }
    }
    return m;
}

std::string serialize_monolith(const Monolith& m) {
    json root = json::object();
    json entities = json::object();
    for (const auto& [id, name] : m.entities) {
        if (name.has_value()) {
            entities[std::to_string(id)] = *name;
        }
    }
    if (!entities.empty()) {
        root["entities"] = std::move(entities);
    }
    json functionalities = json::object();
    for (const auto& [name, f] : m.functionalities) {
        json traces = json::array();
        for (const Trace& t : f.traces) {
            json accesses = json::array();
            for (const Access& a : t.accesses) {
                accesses.push_back(json::array(
                    {a.entity, a.mode == Mode::Read ? "R" : "W"}));
            }
            traces.push_back(json{{"id", t.id}, {"accesses", std::move(accesses)}});
        }
        functionalities[name] = json{{"traces", std::move(traces)}};
    }
    root["functionalities"] = std::move(functionalities);
    return root.dump(2) + "\n";
}

Decomposition parse_decomposition(std::string_view text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(e.what(), e.byte);
    }
    if (!root.is_object() || !root.contains("clusters") ||
        !root["clusters"].is_object()) {
        throw SchemaError("decomposition must be { \"clusters\": { ... } }", "$");
    }
    Decomposition d;
    for (const auto& [name, members] : root["clusters"].items()) {
        if (!members.is_array()) {
            throw SchemaError("cluster members must be an array", "clusters." + name);
        }
        auto& cluster = d.clusters[name];
        for (const json& e : members) {
            if (!e.is_number_integer()) {
                throw SchemaError("cluster member must be an integer entity id",
                                  "clusters." + name);
            }
            if (!cluster.insert(e.get<std::int64_t>()).second) {
                throw SchemaError("duplicate entity in cluster", "clusters." + name);
            }
        }
    }
    return d;
}

std::string serialize_decomposition(const Decomposition& d) {
    json clusters = json::object();
    for (const auto& [name, members] : d.clusters) {
        json arr = json::array();
        for (EntityId e : members) {
            arr.push_back(e);
        }
        clusters[name] = std::move(arr);
    }
    return json{{"clusters", std::move(clusters)}}.dump(2) + "\n";
}

} // namespace monodec
