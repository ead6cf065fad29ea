#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "cbp/assembler.hpp"
#include "cbp/diagnostics.hpp"
#include "cbp/error.hpp"
#include "cbp/knowledge_base.hpp"
#include "cbp/network_doc.hpp"
#include "cbp/process_graph.hpp"

namespace cbp {

enum class ProjectStatus { Draft, Deduced, Assembled, Complete, Exported };

std::string_view to_string(ProjectStatus s);
std::optional<ProjectStatus> parse_project_status(std::string_view s);

struct ProjectSettings {
    bool literal_start_rule = false;
    std::optional<GatewayType> default_gateway_type;
    bool operator==(const ProjectSettings&) const = default;
};

struct Project {
    std::string id;
    ProjectStatus status = ProjectStatus::Draft;
    std::string seed;  // name or path the seed KB was loaded from
    ProjectSettings settings;
    std::optional<CollaborativeNetworkDoc> network;
    KnowledgeBase kb;  // seed + network + derived facts, once deduced
    std::optional<ProcessGraph> graph;
    std::optional<std::string> bpmn;
};

// An input rejected for the listed reasons.
class RejectedInput : public Error {
public:
    RejectedInput(ErrorCode code, const std::string& message, Diagnostics diagnostics)
        : Error(code, message), diagnostics_(std::move(diagnostics)) {}
    const Diagnostics& diagnostics() const { return diagnostics_; }

private:
    Diagnostics diagnostics_;
};

// Pipeline steps. Each throws WrongStatus when the project is not at a
// stage the step accepts and leaves the project unchanged on any error.

// Draft only. Returns warnings; throws RejectedInput on errors.
Diagnostics set_network(Project& p, const CollaborativeNetworkDoc& doc, const KnowledgeBase& seed);
// Rebuilds the KB from seed + network and runs the built-in rules.
// Re-running on an unchanged project leaves the fact set as it was.
void run_deduction(Project& p, const KnowledgeBase& seed);
// Builds the process graph, keeping gateway types already chosen.
void assemble_project(Project& p);
void set_gateway_type(Project& p, const std::string& gateway_id, std::string_view type);
Diagnostics project_completeness(const Project& p);
// Throws IncompleteProcess while completeness diagnostics remain.
const std::string& export_project(Project& p, bool pretty = true);

// Derived fact count per rule id.
std::map<std::string, std::size_t> derived_by_rule(const KnowledgeBase& kb);

// project.json, network.xml, kb.txt, graph.xml, export.bpmn (as present).
void save_project(const Project& p, const std::filesystem::path& dir);
Project load_project(const std::filesystem::path& dir);

// A readable file path is used as is; otherwise `name` is looked up as
// <name>.seed in $CBP_SEED_DIR and the bundled data directory. An empty
// name falls back to $CBP_SEED, then "ph-mini". Throws NotFound.
std::filesystem::path resolve_seed(const std::string& name);

// Projects keyed by id. Mutations of one project are serialized; readers
// get immutable snapshots and never block on writers of other projects.
class ProjectStore {
public:
    ProjectStore(KnowledgeBase seed, std::string seed_name, std::optional<std::filesystem::path> root = std::nullopt);

    const KnowledgeBase& seed() const { return seed_; }

    // Throws ValidationError for an id that is taken or not a slug.
    std::shared_ptr<const Project> create(const std::optional<std::string>& id, const ProjectSettings& settings);
    // Throws NotFound.
    std::shared_ptr<const Project> get(const std::string& id) const;
    std::vector<std::string> ids() const;

    // Applies fn to a copy under the project's lock and publishes (and
    // persists) the copy only if fn returns normally.
    std::shared_ptr<const Project> update(const std::string& id, const std::function<void(Project&)>& fn);

private:
    struct Entry {
        std::mutex write;
        mutable std::mutex publish;
        std::shared_ptr<const Project> current;
    };
    std::shared_ptr<Entry> entry(const std::string& id) const;

    KnowledgeBase seed_;
    std::string seed_name_;
    std::optional<std::filesystem::path> root_;
    mutable std::mutex mutex_;
    std::map<std::string, std::shared_ptr<Entry>> projects_;
    std::size_t next_ = 1;
};

}  // namespace cbp
