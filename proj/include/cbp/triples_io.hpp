#pragma once

#include <iosfwd>
#include <string>

#include "cbp/knowledge_base.hpp"

namespace cbp {

// Line-oriented UTF-8 KB dump:
//
//   instance <id> "<label>" <Concept>[@<rule>],...
//   fact <subject> <predicate> <object|"literal"> asserted|derived:<rule>
//
// Export is canonical (instances by id, then facts in Triple order); import
// accepts lines in any order and registers the rule ids it sees.
std::string export_triples(const KnowledgeBase& kb);
void export_triples(const KnowledgeBase& kb, std::ostream& out);

KnowledgeBase import_triples(std::istream& in);
KnowledgeBase import_triples_string(const std::string& text);
KnowledgeBase import_triples_file(const std::string& path);

}  // namespace cbp
