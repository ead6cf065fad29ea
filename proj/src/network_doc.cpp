#include "cbp/network_doc.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "cbp/error.hpp"
#include "cbp/text.hpp"
#include "cbp/xml.hpp"

namespace cbp {

using json = nlohmann::json;

namespace {

std::string required(const XmlNode& n, const std::string& key) {
    auto v = n.attr(key);
    if (!v) fail(ErrorCode::ParseError, "<" + n.name + "> lacks attribute '" + key + "'");
    return *v;
}

}  // namespace

CollaborativeNetworkDoc parse_network_xml(const std::string& text) {
    XmlNode root = parse_xml(text);
    if (root.local_name() != "network") fail(ErrorCode::ParseError, "root element must be 'network', got '" + root.name + "'");
    CollaborativeNetworkDoc doc;
    doc.name = root.attr("name").value_or("");
    for (const auto& child : root.children) {
        auto kind = child.local_name();
        if (kind == "participants") {
            CollaborativeNetworkDoc::Participant p;
            p.name = required(child, "name");
            for (const auto& sub : child.children) {
                if (sub.local_name() == "role")
                    p.roles.push_back(required(sub, "name"));
                else if (sub.local_name() == "abstractService")
                    p.abstract_services.push_back(required(sub, "name"));
                else
                    fail(ErrorCode::ParseError, "unexpected <" + sub.name + "> in participants");
            }
            doc.participants.push_back(std::move(p));
        } else if (kind == "relationship") {
            doc.relationships.push_back({required(child, "type"), required(child, "P1"), required(child, "P2"),
                                         required(child, "duration")});
        } else if (kind == "topology") {
            if (doc.topology) fail(ErrorCode::ParseError, "more than one <topology>");
            doc.topology = CollaborativeNetworkDoc::Topology{required(child, "power"), required(child, "duration")};
        } else if (kind == "commonGoals") {
            auto d = child.attr("description");
            doc.goals.push_back({d ? *d : child.text});
        } else {
            fail(ErrorCode::ParseError, "unexpected <" + child.name + "> in network");
        }
    }
    return doc;
}

std::string network_to_xml(const CollaborativeNetworkDoc& doc) {
    XmlWriter w(true);
    w.declaration();
    w.open("CNetwork:network", {{"xmlns:CNetwork", "urn:cbp:network"}, {"name", doc.name}});
    for (const auto& p : doc.participants) {
        if (p.roles.empty() && p.abstract_services.empty()) {
            w.empty("participants", {{"name", p.name}});
            continue;
        }
        w.open("participants", {{"name", p.name}});
        for (const auto& r : p.roles) w.empty("role", {{"name", r}});
        for (const auto& a : p.abstract_services) w.empty("abstractService", {{"name", a}});
        w.close();
    }
    for (const auto& r : doc.relationships)
        w.empty("relationship", {{"type", r.type}, {"P1", r.p1}, {"P2", r.p2}, {"duration", r.duration}});
    if (doc.topology) w.empty("topology", {{"power", doc.topology->power}, {"duration", doc.topology->duration}});
    for (const auto& g : doc.goals) w.empty("commonGoals", {{"description", g.description}});
    w.close();
    return w.str();
}

json network_to_json(const CollaborativeNetworkDoc& doc) {
    json j;
    j["network"] = doc.name;
    j["participants"] = json::array();
    for (const auto& p : doc.participants)
        j["participants"].push_back({{"name", p.name}, {"roles", p.roles}, {"abstractServices", p.abstract_services}});
    j["relationships"] = json::array();
    for (const auto& r : doc.relationships)
        j["relationships"].push_back({{"type", r.type}, {"p1", r.p1}, {"p2", r.p2}, {"duration", r.duration}});
    if (doc.topology)
        j["topology"] = {{"power", doc.topology->power}, {"duration", doc.topology->duration}};
    else
        j["topology"] = nullptr;
    j["commonGoals"] = json::array();
    for (const auto& g : doc.goals) j["commonGoals"].push_back({{"description", g.description}});
    return j;
}

CollaborativeNetworkDoc network_from_json(const json& j) {
    try {
        CollaborativeNetworkDoc doc;
        doc.name = j.value("network", "");
        for (const auto& p : j.value("participants", json::array())) {
            doc.participants.push_back({p.at("name").get<std::string>(),
                                        p.value("roles", std::vector<std::string>{}),
                                        p.value("abstractServices", std::vector<std::string>{})});
        }
        for (const auto& r : j.value("relationships", json::array())) {
            doc.relationships.push_back({r.at("type").get<std::string>(), r.at("p1").get<std::string>(),
                                         r.at("p2").get<std::string>(), r.at("duration").get<std::string>()});
        }
        if (j.contains("topology") && !j["topology"].is_null()) {
            const auto& t = j["topology"];
            doc.topology = CollaborativeNetworkDoc::Topology{t.at("power").get<std::string>(),
                                                             t.at("duration").get<std::string>()};
        }
        for (const auto& g : j.value("commonGoals", json::array()))
            doc.goals.push_back({g.at("description").get<std::string>()});
        return doc;
    } catch (const json::exception& e) {
        fail(ErrorCode::ParseError, std::string("network JSON: ") + e.what());
    }
}

CollaborativeNetworkDoc parse_network_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        fail(ErrorCode::ParseError, std::string("network JSON: ") + e.what());
    }
    if (!j.is_object()) fail(ErrorCode::ParseError, "network JSON must be an object");
    return network_from_json(j);
}

CollaborativeNetworkDoc parse_network(const std::string& text) {
    auto pos = text.find_first_not_of(" \t\r\n");
    if (pos != std::string::npos && text[pos] == '{') return parse_network_json(text);
    return parse_network_xml(text);
}

CollaborativeNetworkDoc load_network(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::IoError, "cannot open network document " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_network(ss.str());
}

}  // namespace cbp
