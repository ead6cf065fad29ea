#include "cbp/api.hpp"

#include <nlohmann/json.hpp>

#include "cbp/query.hpp"
#include "cbp/text.hpp"

namespace cbp {

using nlohmann::json;

int http_status(ErrorCode code) {
    switch (code) {
    case ErrorCode::NotFound: return 404;
    case ErrorCode::WrongStatus:
    case ErrorCode::IncompleteProcess: return 409;
    case ErrorCode::IoError: return 500;
    default: return 400;
    }
}

namespace {

json diagnostics_json(const Diagnostics& diags) {
    json a = json::array();
    for (const auto& d : diags) a.push_back({{"severity", to_string(d.severity)}, {"code", d.code}, {"message", d.message}});
    return a;
}

ApiResponse json_response(int status, const json& body) { return {status, "application/json", body.dump(2) + "\n"}; }

ApiResponse error_response(ErrorCode code, const std::string& message, const Diagnostics& diags = {}) {
    json e{{"code", error_name(code)}, {"exitCode", static_cast<int>(code)}, {"message", message}};
    e["diagnostics"] = diagnostics_json(diags);
    return json_response(http_status(code), {{"error", e}});
}

json term_json(const Term& t) { return {{"type", t.is_literal() ? "literal" : "uri"}, {"value", t.value}}; }

json fact_json(const Fact& f) {
    json j{{"subject", f.subject}, {"predicate", to_string(f.predicate)}, {"object", term_json(f.object)}};
    j["provenance"] = f.provenance.rule ? "derived" : "asserted";
    if (f.provenance.rule) j["rule"] = *f.provenance.rule;
    return j;
}

std::string query_param(const ApiRequest& r, const std::string& key, const std::string& fallback = "") {
    auto it = r.query.find(key);
    return it == r.query.end() ? fallback : it->second;
}

json parse_body(const ApiRequest& r) {
    if (r.body.empty()) return json::object();
    try {
        return json::parse(r.body);
    } catch (const json::exception& e) {
        fail(ErrorCode::ParseError, std::string("request body is not JSON: ") + e.what());
    }
}

}  // namespace

json project_summary(const Project& p) {
    json j{{"id", p.id}, {"status", to_string(p.status)}, {"seed", p.seed}, {"hasNetwork", p.network.has_value()}};
    j["settings"] = {{"literalStartRule", p.settings.literal_start_rule},
                     {"defaultGatewayType",
                      p.settings.default_gateway_type ? json(to_string(*p.settings.default_gateway_type)) : json()}};
    j["factCount"] = p.kb.fact_count();
    j["derived"] = derived_by_rule(p.kb);
    j["gateways"] = json::array();
    if (p.graph)
        for (const auto& n : p.graph->nodes)
            if (n.kind == NodeKind::Gateway)
                j["gateways"].push_back({{"id", n.id}, {"direction", to_string(n.direction)}, {"type", to_string(n.gateway_type)}});
    j["diagnostics"] = diagnostics_json(p.graph ? project_completeness(p) : Diagnostics{});
    return j;
}

ApiResponse ApiService::handle(const ApiRequest& req) {
    try {
        return route(req);
    } catch (const RejectedInput& e) {
        return error_response(e.code(), e.what(), e.diagnostics());
    } catch (const Error& e) {
        Diagnostics d;
        if (e.code() == ErrorCode::IncompleteProcess || e.code() == ErrorCode::WrongStatus) {
            // surface what blocks the operation
            try {
                auto parts = split(req.path, '/');
                if (parts.size() > 3) d = project_completeness(*store_.get(parts[3]));
            } catch (const Error&) {
            }
        }
        return error_response(e.code(), e.what(), d);
    } catch (const std::exception& e) {
        return json_response(500, {{"error", {{"code", "Internal"}, {"message", e.what()}, {"diagnostics", json::array()}}}});
    }
}

ApiResponse ApiService::route(const ApiRequest& req) {
    auto seg = split(req.path, '/');
    std::erase_if(seg, [](const std::string& s) { return s.empty(); });
    const std::string& m = req.method;
    auto not_found = [&] { return error_response(ErrorCode::NotFound, "no route " + m + " " + req.path); };
    if (seg.empty() || seg[0] != "v1") return not_found();

    if (seg.size() == 2 && seg[1] == "queries" && m == "GET") {
        json out = json::array();
        for (const auto& [name, q] : canned_queries()) out.push_back({{"name", name}, {"query", format_query(q)}});
        return json_response(200, out);
    }
    if (seg.size() == 2 && seg[1] == "seed" && m == "GET") {
        auto needle = to_lower_ascii(query_param(req, "search"));
        auto concept_filter = query_param(req, "concept");
        std::optional<Concept> only;
        if (!concept_filter.empty()) {
            only = parse_concept(concept_filter);
            if (!only) fail(ErrorCode::UnknownVocabulary, "unknown concept '" + concept_filter + "'");
        }
        json out = json::array();
        for (const Instance* i : store_.seed().instances()) {
            if (only && !i->has(*only)) continue;
            if (!needle.empty() && to_lower_ascii(i->label).find(needle) == std::string::npos) continue;
            json c = json::array();
            for (Concept k : i->concepts()) c.push_back(to_string(k));
            out.push_back({{"id", i->id}, {"label", i->label}, {"concepts", c}});
        }
        return json_response(200, out);
    }
    if (seg.size() < 2 || seg[1] != "projects") return not_found();

    if (seg.size() == 2) {
        if (m == "GET") {
            json out = json::array();
            for (const auto& id : store_.ids()) out.push_back(project_summary(*store_.get(id)));
            return json_response(200, out);
        }
        if (m == "POST") {
            auto body = parse_body(req);
            ProjectSettings s;
            std::optional<std::string> id;
            try {
                if (body.contains("id")) id = body["id"].get<std::string>();
                s.literal_start_rule = body.value("literalStartRule", false);
                if (body.contains("defaultGatewayType") && !body["defaultGatewayType"].is_null()) {
                    auto name = body["defaultGatewayType"].get<std::string>();
                    s.default_gateway_type = parse_gateway_type(name);
                    if (!s.default_gateway_type) fail(ErrorCode::UnsupportedType, "unsupported gateway type '" + name + "'");
                }
            } catch (const json::exception& e) {
                fail(ErrorCode::ParseError, e.what());
            }
            return json_response(201, project_summary(*store_.create(id, s)));
        }
        return not_found();
    }

    const std::string id = seg[2];
    if (seg.size() == 3) {
        if (m != "GET") return not_found();
        return json_response(200, project_summary(*store_.get(id)));
    }
    const std::string& action = seg[3];

    if (action == "network") {
        if (m == "GET") {
            auto p = store_.get(id);
            if (!p->network) fail(ErrorCode::NotFound, "project '" + id + "' has no network");
            return json_response(200, network_to_json(*p->network));
        }
        if (m == "PUT") {
            auto doc = parse_network(req.body);
            Diagnostics warnings;
            auto p = store_.update(id, [&](Project& pr) { warnings = set_network(pr, doc, store_.seed()); });
            auto out = project_summary(*p);
            out["diagnostics"] = diagnostics_json(warnings);
            return json_response(200, out);
        }
    } else if (action == "deduce" && m == "POST") {
        auto p = store_.update(id, [&](Project& pr) { run_deduction(pr, store_.seed()); });
        return json_response(200, project_summary(*p));
    } else if (action == "facts" && m == "GET") {
        auto p = store_.get(id);
        auto prov = query_param(req, "provenance");
        auto rule = query_param(req, "rule");
        if (!prov.empty() && prov != "asserted" && prov != "derived")
            fail(ErrorCode::ValidationError, "provenance must be 'asserted' or 'derived'");
        FactPattern pat;
        if (auto s = query_param(req, "subject"); !s.empty()) pat.subject = s;
        if (auto pr = query_param(req, "predicate"); !pr.empty()) {
            pat.predicate = parse_predicate(pr);
            if (!pat.predicate) fail(ErrorCode::UnknownVocabulary, "unknown predicate '" + pr + "'");
        }
        json out = json::array();
        for (const auto& f : p->kb.match(pat)) {
            if (prov == "asserted" && f.provenance.rule) continue;
            if (prov == "derived" && !f.provenance.rule) continue;
            if (!rule.empty() && f.provenance.rule != rule) continue;
            out.push_back(fact_json(f));
        }
        return json_response(200, {{"facts", out}, {"count", out.size()}});
    } else if (action == "query" && m == "GET") {
        auto p = store_.get(id);
        auto name = query_param(req, "name");
        Query q;
        if (!name.empty()) {
            auto it = canned_queries().find(name);
            if (it == canned_queries().end()) fail(ErrorCode::NotFound, "no canned query '" + name + "'");
            q = it->second;
        } else {
            q = parse_query(query_param(req, "q"));
        }
        auto table = run_query(p->kb, q);
        if (query_param(req, "format", "json") == "xml") return {200, "application/sparql-results+xml", serialize_results(table)};
        return json_response(200, results_to_json(table));
    } else if (action == "assemble" && m == "POST") {
        auto p = store_.update(id, [&](Project& pr) { assemble_project(pr); });
        return json_response(200, graph_to_json(*p->graph));
    } else if (action == "graph" && m == "GET") {
        auto p = store_.get(id);
        if (!p->graph) fail(ErrorCode::WrongStatus, "project '" + id + "' is not assembled");
        if (query_param(req, "format", "json") == "xml") return {200, "application/xml", graph_to_xml(*p->graph)};
        return json_response(200, graph_to_json(*p->graph));
    } else if (action == "gateways" && seg.size() == 5 && m == "PATCH") {
        auto body = parse_body(req);
        if (!body.contains("type") || !body["type"].is_string()) fail(ErrorCode::ValidationError, "body needs a string 'type'");
        auto type = body["type"].get<std::string>();
        auto p = store_.update(id, [&](Project& pr) { set_gateway_type(pr, seg[4], type); });
        return json_response(200, project_summary(*p));
    } else if (action == "completeness" && m == "GET") {
        auto p = store_.get(id);
        auto d = project_completeness(*p);
        return json_response(200, {{"complete", d.empty()}, {"diagnostics", diagnostics_json(d)}});
    } else if (action == "export") {
        if (m == "POST") {
            bool pretty = query_param(req, "pretty", "true") != "false";
            auto p = store_.update(id, [&](Project& pr) { export_project(pr, pretty); });
            return {200, "application/xml", *p->bpmn};
        }
        if (m == "GET") {
            auto p = store_.get(id);
            if (!p->bpmn) fail(ErrorCode::WrongStatus, "project '" + id + "' has not been exported");
            return {200, "application/xml", *p->bpmn};
        }
    }
    return not_found();
}

}  // namespace cbp
