#include "cbp/triples_io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <vector>

#include "cbp/error.hpp"
#include "cbp/text.hpp"

namespace cbp {

namespace {

std::string quoted(const std::string& s) {
    std::ostringstream os;
    os << std::quoted(s);
    return os.str();
}

std::string provenance_token(const Provenance& p) {
    return p.is_asserted() ? "asserted" : "derived:" + *p.rule;
}

Provenance parse_provenance(const std::string& token, int line) {
    if (token == "asserted") return Provenance::asserted();
    if (token.rfind("derived:", 0) == 0 && token.size() > 8) return Provenance::derived(token.substr(8));
    fail(ErrorCode::ParseError, "line " + std::to_string(line) + ": bad provenance '" + token + "'");
}

struct PendingInstance {
    std::string id, label;
    std::vector<std::pair<Concept, Provenance>> types;
};

}  // namespace

void export_triples(const KnowledgeBase& kb, std::ostream& out) {
    for (const Instance* inst : kb.instances()) {
        out << "instance " << inst->id << ' ' << quoted(inst->label) << ' ';
        bool first = true;
        for (const auto& [c, prov] : inst->types) {
            if (!first) out << ',';
            first = false;
            out << to_string(c);
            if (!prov.is_asserted()) out << '@' << *prov.rule;
        }
        out << '\n';
    }
    for (const Fact& f : kb.facts()) {
        out << "fact " << f.subject << ' ' << to_string(f.predicate) << ' '
            << (f.object.is_literal() ? quoted(f.object.value) : f.object.value) << ' '
            << provenance_token(f.provenance) << '\n';
    }
}

std::string export_triples(const KnowledgeBase& kb) {
    std::ostringstream os;
    export_triples(kb, os);
    return os.str();
}

KnowledgeBase import_triples(std::istream& in) {
    std::vector<PendingInstance> instances;
    std::vector<Fact> facts;
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string kind;
        ls >> kind;
        auto bad = [&](const std::string& why) {
            fail(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": " + why);
        };
        if (kind == "instance") {
            PendingInstance pi;
            std::string concepts;
            ls >> pi.id >> std::quoted(pi.label) >> concepts;
            if (!ls || pi.id.empty() || concepts.empty()) bad("malformed instance line");
            for (const auto& tok : split(concepts, ',')) {
                auto at = tok.find('@');
                auto c = parse_concept(tok.substr(0, at));
                if (!c) fail(ErrorCode::UnknownVocabulary, "concept '" + tok.substr(0, at) + "'");
                pi.types.emplace_back(*c, at == std::string::npos ? Provenance::asserted()
                                                                   : Provenance::derived(tok.substr(at + 1)));
            }
            instances.push_back(std::move(pi));
        } else if (kind == "fact") {
            Fact f;
            std::string pred, prov;
            ls >> f.subject >> pred >> std::ws;
            if (ls.peek() == '"') {
                std::string lit;
                ls >> std::quoted(lit);
                f.object = Term::literal(lit);
            } else {
                std::string id;
                ls >> id;
                f.object = Term::id(id);
            }
            ls >> prov;
            if (!ls || f.subject.empty()) bad("malformed fact line");
            auto p = parse_predicate(pred);
            if (!p) fail(ErrorCode::UnknownVocabulary, "predicate '" + pred + "'");
            f.predicate = *p;
            f.provenance = parse_provenance(prov, line_no);
            facts.push_back(std::move(f));
        } else {
            bad("unknown record '" + kind + "'");
        }
    }

    KnowledgeBase kb;
    auto register_prov = [&](const Provenance& p) {
        if (!p.is_asserted()) kb.register_rule(*p.rule);
    };
    for (const auto& pi : instances) {
        for (const auto& [c, prov] : pi.types) {
            register_prov(prov);
            kb.add_instance(pi.id, pi.label, {c}, prov);
        }
    }
    for (const auto& f : facts) {
        register_prov(f.provenance);
        kb.assert_fact(f);
    }
    return kb;
}

KnowledgeBase import_triples_string(const std::string& text) {
    std::istringstream is(text);
    return import_triples(is);
}

KnowledgeBase import_triples_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::IoError, "cannot open " + path);
    return import_triples(in);
}

}  // namespace cbp
