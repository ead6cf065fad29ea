#include "cbp/project.hpp"

#include <cstdlib>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "cbp/bpmn.hpp"
#include "cbp/engine.hpp"
#include "cbp/ingestion.hpp"
#include "cbp/ruleset.hpp"
#include "cbp/text.hpp"
#include "cbp/triples_io.hpp"

#ifndef CBP_DATA_DIR
#define CBP_DATA_DIR "data"
#endif

namespace cbp {

namespace fs = std::filesystem;

std::string_view to_string(ProjectStatus s) {
    switch (s) {
    case ProjectStatus::Draft: return "draft";
    case ProjectStatus::Deduced: return "deduced";
    case ProjectStatus::Assembled: return "assembled";
    case ProjectStatus::Complete: return "complete";
    case ProjectStatus::Exported: return "exported";
    }
    return "?";
}

std::optional<ProjectStatus> parse_project_status(std::string_view s) {
    for (auto st : {ProjectStatus::Draft, ProjectStatus::Deduced, ProjectStatus::Assembled, ProjectStatus::Complete,
                    ProjectStatus::Exported})
        if (to_string(st) == s) return st;
    return std::nullopt;
}

namespace {

[[noreturn]] void wrong_status(const Project& p, const std::string& op) {
    fail(ErrorCode::WrongStatus, "cannot " + op + " project '" + p.id + "' in status " + std::string(to_string(p.status)));
}

ErrorCode code_for(const Diagnostics& d) {
    for (const auto& x : d) {
        if (x.severity != Severity::Error) continue;
        if (x.code == "unknown-role") return ErrorCode::UnknownRole;
        if (x.code == "unknown-abstract-service") return ErrorCode::UnknownAbstractService;
        return ErrorCode::ValidationError;
    }
    return ErrorCode::ValidationError;
}

void refresh_status(Project& p) {
    p.status = project_completeness(p).empty() ? ProjectStatus::Complete : ProjectStatus::Assembled;
}

}  // namespace

Diagnostics set_network(Project& p, const CollaborativeNetworkDoc& doc, const KnowledgeBase& seed) {
    if (p.status != ProjectStatus::Draft) wrong_status(p, "replace the network of");
    auto diags = validate_network(doc, &seed);
    if (has_errors(diags)) {
        std::string msg = "network rejected:";
        for (const auto& d : diags)
            if (d.severity == Severity::Error) msg += "\n  " + format_diagnostic(d);
        throw RejectedInput(code_for(diags), msg, diags);
    }
    KnowledgeBase probe = seed;
    ingest_network(probe, doc);
    p.network = doc;
    return diags;
}

void run_deduction(Project& p, const KnowledgeBase& seed) {
    if (!p.network) wrong_status(p, "deduce without a network for");
    KnowledgeBase kb = seed;
    ingest_network(kb, *p.network);
    run_to_fixpoint(kb, builtin_ruleset());
    p.kb = std::move(kb);
    if (p.status == ProjectStatus::Draft) p.status = ProjectStatus::Deduced;
}

void assemble_project(Project& p) {
    if (p.status == ProjectStatus::Draft || p.status == ProjectStatus::Exported) wrong_status(p, "assemble");
    auto previous = p.graph ? gateway_assignments(*p.graph) : GatewayAssignment{};
    auto g = build_process(p.kb, {p.settings.literal_start_rule});
    for (const auto& [id, t] : previous) {
        const Node* n = g.find_node(id);
        if (n && n->kind == NodeKind::Gateway) g = assign_gateway_type(std::move(g), id, t);
    }
    if (p.settings.default_gateway_type) g = fill_unset_gateways(std::move(g), *p.settings.default_gateway_type);
    p.graph = std::move(g);
    refresh_status(p);
}

void set_gateway_type(Project& p, const std::string& gateway_id, std::string_view type) {
    if (p.status != ProjectStatus::Assembled && p.status != ProjectStatus::Complete) wrong_status(p, "type gateways of");
    p.graph = assign_gateway_type(*p.graph, gateway_id, type);
    refresh_status(p);
}

Diagnostics project_completeness(const Project& p) {
    if (!p.graph) return {{Severity::Error, "not-assembled", "no process graph yet"}};
    return completeness_check(*p.graph);
}

const std::string& export_project(Project& p, bool pretty) {
    if (!p.graph || p.status == ProjectStatus::Draft || p.status == ProjectStatus::Deduced) wrong_status(p, "export");
    p.bpmn = serialize_bpmn(export_bpmn(*p.graph), pretty);
    p.status = ProjectStatus::Exported;
    return *p.bpmn;
}

std::map<std::string, std::size_t> derived_by_rule(const KnowledgeBase& kb) {
    std::map<std::string, std::size_t> out;
    for (const auto& f : kb.facts())
        if (f.provenance.rule) ++out[*f.provenance.rule];
    return out;
}

namespace {

void write_file(const fs::path& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::IoError, "cannot write " + path.string());
    out << bytes;
    if (!out) fail(ErrorCode::IoError, "short write to " + path.string());
}

std::optional<std::string> read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void put_or_remove(const fs::path& path, const std::optional<std::string>& bytes) {
    if (bytes)
        write_file(path, *bytes);
    else
        fs::remove(path);
}

}  // namespace

void save_project(const Project& p, const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) fail(ErrorCode::IoError, "cannot create " + dir.string() + ": " + ec.message());
    nlohmann::json meta{{"id", p.id}, {"status", to_string(p.status)}, {"seed", p.seed}};
    meta["settings"]["literalStartRule"] = p.settings.literal_start_rule;
    meta["settings"]["defaultGatewayType"] =
        p.settings.default_gateway_type ? nlohmann::json(to_string(*p.settings.default_gateway_type)) : nlohmann::json();
    write_file(dir / "project.json", meta.dump(2) + "\n");
    put_or_remove(dir / "network.xml", p.network ? std::optional(network_to_xml(*p.network)) : std::nullopt);
    put_or_remove(dir / "kb.txt", p.status != ProjectStatus::Draft ? std::optional(export_triples(p.kb)) : std::nullopt);
    put_or_remove(dir / "graph.xml", p.graph ? std::optional(graph_to_xml(*p.graph)) : std::nullopt);
    put_or_remove(dir / "export.bpmn", p.bpmn);
}

Project load_project(const fs::path& dir) {
    auto meta_text = read_file(dir / "project.json");
    if (!meta_text) fail(ErrorCode::IoError, "no project.json in " + dir.string());
    Project p;
    try {
        auto meta = nlohmann::json::parse(*meta_text);
        p.id = meta.at("id");
        auto status = parse_project_status(meta.at("status").get<std::string>());
        if (!status) fail(ErrorCode::ParseError, "bad project status");
        p.status = *status;
        p.seed = meta.value("seed", "");
        const auto& s = meta.at("settings");
        p.settings.literal_start_rule = s.value("literalStartRule", false);
        if (s.contains("defaultGatewayType") && !s["defaultGatewayType"].is_null()) {
            auto t = parse_gateway_type(s["defaultGatewayType"].get<std::string>());
            if (!t) fail(ErrorCode::ParseError, "bad default gateway type");
            p.settings.default_gateway_type = t;
        }
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::ParseError, "project.json: " + std::string(e.what()));
    }
    if (auto net = read_file(dir / "network.xml")) p.network = parse_network_xml(*net);
    if (auto kb = read_file(dir / "kb.txt")) p.kb = import_triples_string(*kb);
    if (auto g = read_file(dir / "graph.xml")) p.graph = graph_from_xml(*g);
    p.bpmn = read_file(dir / "export.bpmn");
    return p;
}

fs::path resolve_seed(const std::string& name) {
    std::string n = name;
    if (n.empty()) {
        const char* env = std::getenv("CBP_SEED");
        n = env && *env ? env : "ph-mini";
    }
    if (fs::is_regular_file(n)) return n;
    std::vector<fs::path> dirs;
    if (const char* env = std::getenv("CBP_SEED_DIR"); env && *env) dirs.emplace_back(env);
    dirs.emplace_back(fs::path(CBP_DATA_DIR) / "seeds");
    for (const auto& d : dirs)
        if (fs::is_regular_file(d / (n + ".seed"))) return d / (n + ".seed");
    fail(ErrorCode::NotFound, "no seed repository '" + n + "'");
}

ProjectStore::ProjectStore(KnowledgeBase seed, std::string seed_name, std::optional<fs::path> root)
    : seed_(std::move(seed)), seed_name_(std::move(seed_name)), root_(std::move(root)) {
    if (!root_) return;
    fs::create_directories(*root_);
    for (const auto& d : fs::directory_iterator(*root_)) {
        if (!d.is_directory() || !fs::exists(d.path() / "project.json")) continue;
        auto e = std::make_shared<Entry>();
        e->current = std::make_shared<const Project>(load_project(d.path()));
        projects_[e->current->id] = e;
    }
}

std::shared_ptr<const Project> ProjectStore::create(const std::optional<std::string>& id, const ProjectSettings& settings) {
    std::lock_guard lock(mutex_);
    std::string pid;
    if (id) {
        if (id->empty() || slug(*id) != *id) fail(ErrorCode::ValidationError, "project id '" + *id + "' is not a valid slug");
        if (projects_.contains(*id)) fail(ErrorCode::ValidationError, "project '" + *id + "' already exists");
        pid = *id;
    } else {
        do pid = "p" + std::to_string(next_++);
        while (projects_.contains(pid));
    }
    auto p = std::make_shared<Project>();
    p->id = pid;
    p->seed = seed_name_;
    p->settings = settings;
    if (root_) save_project(*p, *root_ / pid);
    auto e = std::make_shared<Entry>();
    e->current = p;
    projects_[pid] = e;
    return p;
}

std::shared_ptr<ProjectStore::Entry> ProjectStore::entry(const std::string& id) const {
    std::lock_guard lock(mutex_);
    auto it = projects_.find(id);
    if (it == projects_.end()) fail(ErrorCode::NotFound, "no project '" + id + "'");
    return it->second;
}

std::shared_ptr<const Project> ProjectStore::get(const std::string& id) const {
    auto e = entry(id);
    std::lock_guard lock(e->publish);
    return e->current;
}

std::vector<std::string> ProjectStore::ids() const {
    std::lock_guard lock(mutex_);
    std::vector<std::string> out;
    for (const auto& [id, e] : projects_) out.push_back(id);
    return out;
}

std::shared_ptr<const Project> ProjectStore::update(const std::string& id, const std::function<void(Project&)>& fn) {
    auto e = entry(id);
    std::lock_guard write(e->write);
    std::shared_ptr<const Project> base;
    {
        std::lock_guard lock(e->publish);
        base = e->current;
    }
    auto next = std::make_shared<Project>(*base);
    fn(*next);
    if (root_) save_project(*next, *root_ / id);
    std::lock_guard lock(e->publish);
    e->current = next;
    return next;
}

}  // namespace cbp
