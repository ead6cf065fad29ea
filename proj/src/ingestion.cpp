#include "cbp/ingestion.hpp"

#include <set>

#include "cbp/error.hpp"
#include "cbp/text.hpp"

namespace cbp {

const std::vector<IngestionMappingRow>& ingestion_mapping() {
    using P = Predicate;
    static const std::vector<IngestionMappingRow> rows{
        {"network", "CollaborativeNetwork", {P::name, P::hasRelationship, P::hasTopology, P::hasCommonGoal}},
        {"topology", "Topology", {P::hasPower, P::hasDuration}},
        {"commonGoals", "CommonGoal", {P::description}},
        {"participants", "Participant", {P::name, P::provideAService}},
        {"role", "playRole", {P::playRole}},
        {"relationship", "Relationship", {P::P1, P::P2, P::hasType, P::hasDuration}},
    };
    return rows;
}

std::string network_id(const CollaborativeNetworkDoc& doc) {
    return slug_join({"net", doc.name.empty() ? std::string_view("network") : std::string_view(doc.name)});
}
std::string participant_id(const std::string& name) { return slug(name); }
std::string relationship_id(const CollaborativeNetworkDoc::Relationship& r) {
    return slug_join({"rel", r.p1, r.p2, r.type});
}
std::string topology_id(const CollaborativeNetworkDoc& doc) { return slug_join({"topology", network_id(doc)}); }
std::string goal_id(const CollaborativeNetworkDoc& doc, const std::string& description) {
    return slug_join({"goal", network_id(doc), description});
}

namespace {

bool in_group(const std::string& value, EnumGroup group) {
    auto e = find_enum_individual(value);
    return e && e->group == group;
}

std::string canonical_enum(const std::string& value) {
    auto e = find_enum_individual(value);
    return e ? std::string(e->id) : value;
}

// Power/duration pairs some topology rule types.
bool typable(const std::string& power, const std::string& duration) {
    const auto p = canonical_enum(power);
    const auto d = canonical_enum(duration);
    return (p == "central" && d == "continuous") || (p == "equal" && d == "discontinuous") ||
           (p == "hierarchical" && d == "continuous");
}

}  // namespace

Diagnostics validate_network(const CollaborativeNetworkDoc& doc, const KnowledgeBase* seed) {
    Diagnostics out;
    auto error = [&](std::string code, std::string msg) { out.push_back({Severity::Error, std::move(code), std::move(msg)}); };

    if (doc.participants.size() < 2)
        error("too-few-participants", "a collaborative network needs at least two participants, found " +
                                          std::to_string(doc.participants.size()));
    std::set<std::string> names;
    for (const auto& p : doc.participants) {
        if (trim(p.name).empty()) {
            error("empty-participant-name", "participant without a name");
            continue;
        }
        if (!names.insert(p.name).second) error("duplicate-participant", "participant '" + p.name + "' declared twice");
        if (seed) {
            if (const Instance* clash = seed->find_instance(participant_id(p.name)); clash && !clash->has(Concept::Participant))
                error("id-collision", "participant '" + p.name + "' collides with repository entry '" + clash->label + "'");
            for (const auto& r : p.roles)
                if (!seed->has_concept(slug(r), Concept::Role))
                    error("unknown-role", "participant '" + p.name + "' plays unknown role '" + r + "'");
            for (const auto& a : p.abstract_services)
                if (!seed->has_concept(slug(a), Concept::AbstractService))
                    error("unknown-abstract-service",
                          "participant '" + p.name + "' declares unknown abstract service '" + a + "'");
        }
    }
    for (const auto& r : doc.relationships) {
        const std::string what = "relationship " + r.p1 + " -> " + r.p2;
        if (!names.contains(r.p1)) error("dangling-endpoint", what + ": P1 '" + r.p1 + "' is not a participant");
        if (!names.contains(r.p2)) error("dangling-endpoint", what + ": P2 '" + r.p2 + "' is not a participant");
        if (r.p1 == r.p2) error("self-relationship", what + " relates a participant to itself");
        if (!in_group(r.type, EnumGroup::RelationshipType)) error("bad-relationship-type", what + ": type '" + r.type + "'");
        if (!in_group(r.duration, EnumGroup::Duration)) error("bad-duration", what + ": duration '" + r.duration + "'");
    }
    if (!doc.topology) {
        error("missing-topology", "the network has no topology");
    } else {
        const auto& t = *doc.topology;
        bool ok = true;
        if (!in_group(t.power, EnumGroup::Power)) {
            error("bad-power", "topology power '" + t.power + "'");
            ok = false;
        }
        if (!in_group(t.duration, EnumGroup::Duration)) {
            error("bad-duration", "topology duration '" + t.duration + "'");
            ok = false;
        }
        if (ok && !typable(t.power, t.duration))
            out.push_back({Severity::Warning, "untypable-topology",
                           "untypable topology: no topology type for power '" + t.power + "' and duration '" +
                               t.duration + "'"});
    }
    for (const auto& g : doc.goals)
        if (trim(g.description).empty()) error("empty-goal", "common goal with an empty description");
    return out;
}

void ingest_network(KnowledgeBase& kb, const CollaborativeNetworkDoc& doc) {
    for (const auto& d : validate_network(doc, &kb)) {
        if (d.severity != Severity::Error) continue;
        if (d.code == "unknown-role") fail(ErrorCode::UnknownRole, d.message);
        if (d.code == "unknown-abstract-service") fail(ErrorCode::UnknownAbstractService, d.message);
        fail(ErrorCode::ValidationError, d.message);
    }

    auto fact = [&](const std::string& s, Predicate p, Term o) { kb.assert_fact({s, p, std::move(o), {}}); };

    const std::string net = network_id(doc);
    const std::string net_label = doc.name.empty() ? "network" : doc.name;
    kb.add_instance(net, net_label, {Concept::CollaborativeNetwork});
    fact(net, Predicate::name, Term::literal(net_label));

    for (const auto& p : doc.participants) {
        const std::string id = participant_id(p.name);
        kb.add_instance(id, p.name, {Concept::Participant});
        fact(id, Predicate::name, Term::literal(p.name));
        for (const auto& r : p.roles) fact(id, Predicate::playRole, Term::id(slug(r)));
        for (const auto& a : p.abstract_services) fact(id, Predicate::provideAService, Term::id(slug(a)));
    }
    for (const auto& r : doc.relationships) {
        const std::string id = relationship_id(r);
        kb.add_instance(id, r.type + " " + r.p1 + "/" + r.p2, {Concept::Relationship});
        fact(net, Predicate::hasRelationship, Term::id(id));
        fact(id, Predicate::P1, Term::id(participant_id(r.p1)));
        fact(id, Predicate::P2, Term::id(participant_id(r.p2)));
        fact(id, Predicate::hasType, Term::id(canonical_enum(r.type)));
        fact(id, Predicate::hasDuration, Term::id(canonical_enum(r.duration)));
    }
    {
        const auto& t = *doc.topology;
        const std::string id = topology_id(doc);
        kb.add_instance(id, "topology of " + net_label, {Concept::Topology});
        fact(net, Predicate::hasTopology, Term::id(id));
        fact(id, Predicate::hasPower, Term::id(canonical_enum(t.power)));
        fact(id, Predicate::hasDuration, Term::id(canonical_enum(t.duration)));
    }
    for (const auto& g : doc.goals) {
        const std::string description = trim(g.description);
        const std::string id = goal_id(doc, description);
        kb.add_instance(id, description, {Concept::CommonGoal});
        fact(net, Predicate::hasCommonGoal, Term::id(id));
        fact(id, Predicate::description, Term::literal(description));
    }
}

}  // namespace cbp
