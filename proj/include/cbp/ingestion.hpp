#pragma once

#include <string>
#include <vector>

#include "cbp/diagnostics.hpp"
#include "cbp/knowledge_base.hpp"
#include "cbp/network_doc.hpp"

namespace cbp {

// One row of the document-element -> KB mapping. `result` is the concept
// (or predicate, for `role`) the element becomes; `predicates` is every
// predicate the element may assert.
struct IngestionMappingRow {
    std::string source_element;
    std::string result;
    std::vector<Predicate> predicates;
};

const std::vector<IngestionMappingRow>& ingestion_mapping();

// Deterministic ids of the instances a document creates.
std::string network_id(const CollaborativeNetworkDoc& doc);
std::string participant_id(const std::string& name);
std::string relationship_id(const CollaborativeNetworkDoc::Relationship& r);
std::string topology_id(const CollaborativeNetworkDoc& doc);
std::string goal_id(const CollaborativeNetworkDoc& doc, const std::string& description);

// Structural checks, plus seed linkage when `seed` is given. Errors mean
// ingest_network would throw; warnings (e.g. a power/duration pair no
// topology rule types) do not.
Diagnostics validate_network(const CollaborativeNetworkDoc& doc, const KnowledgeBase* seed = nullptr);

// Adds the document's instances and facts (all Asserted). Idempotent.
// Throws ValidationError, UnknownRole or UnknownAbstractService.
void ingest_network(KnowledgeBase& kb, const CollaborativeNetworkDoc& doc);

}  // namespace cbp
