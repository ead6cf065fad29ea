#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "cbp/api.hpp"
#include "cbp/bpmn.hpp"
#include "cbp/http_server.hpp"
#include "cbp/ingestion.hpp"
#include "cbp/project.hpp"
#include "cbp/query.hpp"
#include "cbp/seed.hpp"
#include "cbp/triples_io.hpp"

using namespace cbp;

namespace {

struct Inputs {
    std::string seed;
    std::string network;
    std::string facts;
    bool literal_start_rule = false;
    std::string default_gateway_type;
    std::vector<std::string> gateways;  // id=type
};

void add_inputs(CLI::App* cmd, Inputs& in, bool with_facts) {
    cmd->add_option("--seed", in.seed, "seed repository: file path or bundled name (default $CBP_SEED or ph-mini)");
    cmd->add_option("--network", in.network, "collaborative network document (.xml or .json)");
    if (with_facts) cmd->add_option("--facts", in.facts, "deduced KB in triples format, instead of --seed/--network");
}

void add_process_flags(CLI::App* cmd, Inputs& in) {
    cmd->add_flag("--literal-start-rule", in.literal_start_rule, "every task without incoming message flow starts the process");
    cmd->add_option("--default-gateway-type", in.default_gateway_type, "type given to gateways left untyped");
    cmd->add_option("--gateway", in.gateways, "gateway type assignment id=type (repeatable)");
}

void write_output(const std::string& path, const std::string& bytes) {
    if (path.empty() || path == "-") {
        std::cout << bytes;
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::IoError, "cannot write " + path);
    out << bytes;
}

std::string read_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::IoError, "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void print_diagnostics(const Diagnostics& diags) {
    for (const auto& d : diags) std::cerr << format_diagnostic(d) << "\n";
}

KnowledgeBase seed_kb(const Inputs& in) { return load_seed(resolve_seed(in.seed).string()); }

// Runs the project pipeline up to the requested stage from CLI inputs.
Project pipeline(const Inputs& in, ProjectStatus until) {
    Project p;
    p.id = "cli";
    p.seed = in.seed;
    p.settings.literal_start_rule = in.literal_start_rule;
    if (!in.default_gateway_type.empty()) {
        p.settings.default_gateway_type = parse_gateway_type(in.default_gateway_type);
        if (!p.settings.default_gateway_type)
            fail(ErrorCode::UnsupportedType, "unsupported gateway type '" + in.default_gateway_type + "'");
    }
    if (!in.facts.empty()) {
        p.kb = import_triples_file(in.facts);
        p.status = ProjectStatus::Deduced;
    } else {
        if (in.network.empty()) fail(ErrorCode::ValidationError, "--network (or --facts) is required");
        auto seed = seed_kb(in);
        print_diagnostics(set_network(p, load_network(in.network), seed));
        run_deduction(p, seed);
    }
    if (until == ProjectStatus::Deduced) return p;
    assemble_project(p);
    for (const auto& a : in.gateways) {
        auto eq = a.find('=');
        if (eq == std::string::npos) fail(ErrorCode::ValidationError, "--gateway expects id=type, got '" + a + "'");
        set_gateway_type(p, a.substr(0, eq), a.substr(eq + 1));
    }
    return p;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Collaborative process generator: deduction, assembly and BPMN export"};
    app.require_subcommand(1);

    Inputs in;
    std::string out;
    bool json_out = false;

    auto* validate = app.add_subcommand("validate", "check a network document against the seed repository");
    add_inputs(validate, in, false);
    validate->add_flag("--json", json_out, "print diagnostics as JSON");

    auto* deduce = app.add_subcommand("deduce", "ingest a network and run the deduction rules");
    add_inputs(deduce, in, false);
    deduce->add_option("-o,--out", out, "output KB in triples format (default stdout)");

    auto* assemble = app.add_subcommand("assemble", "build the process graph");
    add_inputs(assemble, in, true);
    add_process_flags(assemble, in);
    assemble->add_option("-o,--out", out, "output process graph (default stdout)");
    assemble->add_flag("--json", json_out, "write the graph as JSON instead of XML");

    bool canonical = false;
    std::string graph_path, project_dir;
    auto* exp = app.add_subcommand("export", "write the BPMN document of a complete process");
    add_inputs(exp, in, true);
    add_process_flags(exp, in);
    exp->add_option("--graph", graph_path, "process graph XML, instead of deducing from inputs");
    exp->add_option("--project", project_dir, "project directory, instead of deducing from inputs");
    exp->add_option("-o,--out", out, "output .bpmn (default stdout)");
    exp->add_flag("--canonical,!--pretty", canonical, "single-line canonical XML instead of indented");

    std::string query_name, query_text, base = kDefaultResultBase, format = "xml";
    bool list = false;
    auto* query = app.add_subcommand("query", "run a canned or ad hoc query over the deduced KB");
    add_inputs(query, in, true);
    query->add_option("--name", query_name, "canned query name");
    query->add_option("--query", query_text, "query text: SELECT ?v ... WHERE { ... }");
    query->add_option("--format", format, "xml or json")->check(CLI::IsMember({"xml", "json"}));
    query->add_option("--base", base, "uri prefix for instance ids");
    query->add_flag("--list", list, "list canned queries");
    query->add_option("-o,--out", out, "output file (default stdout)");

    std::string host = "127.0.0.1", root;
    int port = 8080;
    auto* serve = app.add_subcommand("serve", "serve the /v1 HTTP API");
    serve->add_option("--seed", in.seed, "seed repository");
    serve->add_option("--host", host, "bind address");
    serve->add_option("--port", port, "port");
    serve->add_option("--root", root, "directory holding one sub-directory per project (default: in memory)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*validate) {
            if (in.network.empty()) fail(ErrorCode::ValidationError, "--network is required");
            auto seed = seed_kb(in);
            auto diags = validate_network(load_network(in.network), &seed);
            if (json_out) {
                nlohmann::json a = nlohmann::json::array();
                for (const auto& d : diags) a.push_back({{"severity", to_string(d.severity)}, {"code", d.code}, {"message", d.message}});
                std::cout << a.dump(2) << "\n";
            } else {
                print_diagnostics(diags);
            }
            if (has_errors(diags)) {
                Project probe;
                try {
                    set_network(probe, load_network(in.network), seed);
                } catch (const Error& e) {
                    return static_cast<int>(e.code());
                }
            }
            if (!json_out) std::cerr << "network is valid\n";
            return 0;
        }
        if (*deduce) {
            auto p = pipeline(in, ProjectStatus::Deduced);
            write_output(out, export_triples(p.kb));
            for (const auto& [rule, n] : derived_by_rule(p.kb)) std::cerr << rule << ": " << n << " derived\n";
            return 0;
        }
        if (*assemble) {
            auto p = pipeline(in, ProjectStatus::Assembled);
            write_output(out, json_out ? graph_to_json(*p.graph).dump(2) + "\n" : graph_to_xml(*p.graph));
            print_diagnostics(project_completeness(p));
            return 0;
        }
        if (*exp) {
            Project p;
            if (!project_dir.empty()) {
                p = load_project(project_dir);
            } else if (!graph_path.empty()) {
                p.id = "cli";
                p.graph = graph_from_xml(read_input(graph_path));
                p.status = ProjectStatus::Assembled;
                if (!in.default_gateway_type.empty()) {
                    auto t = parse_gateway_type(in.default_gateway_type);
                    if (!t) fail(ErrorCode::UnsupportedType, "unsupported gateway type '" + in.default_gateway_type + "'");
                    p.graph = fill_unset_gateways(*p.graph, *t);
                }
                for (const auto& a : in.gateways) {
                    auto eq = a.find('=');
                    if (eq == std::string::npos) fail(ErrorCode::ValidationError, "--gateway expects id=type, got '" + a + "'");
                    set_gateway_type(p, a.substr(0, eq), a.substr(eq + 1));
                }
            } else {
                p = pipeline(in, ProjectStatus::Assembled);
            }
            auto diags = project_completeness(p);
            if (!diags.empty()) {
                print_diagnostics(diags);
                fail(ErrorCode::IncompleteProcess, "type every gateway (--gateway id=type or --default-gateway-type) before export");
            }
            write_output(out, export_project(p, !canonical));
            return 0;
        }
        if (*query) {
            if (list) {
                std::string text;
                for (const auto& [name, q] : canned_queries()) text += name + "\t" + format_query(q) + "\n";
                write_output(out, text);
                return 0;
            }
            if (query_name.empty() == query_text.empty()) fail(ErrorCode::MalformedQuery, "give exactly one of --name or --query");
            Query q;
            if (!query_name.empty()) {
                auto it = canned_queries().find(query_name);
                if (it == canned_queries().end()) fail(ErrorCode::NotFound, "no canned query '" + query_name + "'");
                q = it->second;
            } else {
                q = parse_query(query_text);
            }
            auto p = pipeline(in, ProjectStatus::Deduced);
            auto table = run_query(p.kb, q);
            write_output(out, format == "json" ? results_to_json(table, base).dump(2) + "\n" : serialize_results(table, base));
            return 0;
        }
        if (*serve) {
            auto seed_path = resolve_seed(in.seed);
            ProjectStore store(load_seed(seed_path.string()), in.seed.empty() ? seed_path.stem().string() : in.seed,
                               root.empty() ? std::nullopt : std::optional<std::filesystem::path>(root));
            ApiService api(store);
            HttpServer server(api);
            std::cerr << "serving /v1 on " << host << ":" << port << "\n";
            server.run(host, port);
            return 0;
        }
    } catch (const Error& e) {
        if (const auto* r = dynamic_cast<const RejectedInput*>(&e)) print_diagnostics(r->diagnostics());
        std::cerr << "cbpgen: " << e.what() << "\n";
        return static_cast<int>(e.code());
    } catch (const std::exception& e) {
        std::cerr << "cbpgen: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
