#include "cbp/query.hpp"

#include <algorithm>
#include <cctype>
#include <nlohmann/json.hpp>
#include <set>

#include "cbp/error.hpp"
#include "cbp/text.hpp"
#include "cbp/xml.hpp"

namespace cbp {

namespace {

[[noreturn]] void malformed(const std::string& why) { fail(ErrorCode::MalformedQuery, why); }

std::vector<std::string> tokenize(const std::string& text) {
    std::vector<std::string> out;
    std::size_t i = 0;
    const std::size_t n = text.size();
    auto is_break = [&](std::size_t k) { return k >= n || std::isspace(static_cast<unsigned char>(text[k])) || text[k] == '}'; };
    while (i < n) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (c == '{' || c == '}') {
            out.emplace_back(1, c);
            ++i;
        } else if (c == '"') {
            std::string tok = "\"";
            ++i;
            while (i < n && text[i] != '"') {
                if (text[i] == '\\' && i + 1 < n) ++i;
                tok.push_back(text[i++]);
            }
            if (i >= n) malformed("unterminated literal");
            ++i;
            tok.push_back('"');
            out.push_back(tok);
            // language tags and datatypes are not supported; skip a trailing @xx
            if (i < n && text[i] == '@')
                while (i < n && !is_break(i) && text[i] != '.') ++i;
        } else if (c == '<') {
            auto end = text.find('>', i);
            if (end == std::string::npos) malformed("unterminated <uri>");
            out.push_back(text.substr(i, end - i + 1));
            i = end + 1;
        } else if (c == '.' && is_break(i + 1)) {
            out.emplace_back(".");
            ++i;
        } else {
            std::size_t start = i;
            while (i < n && !std::isspace(static_cast<unsigned char>(text[i])) && text[i] != '{' && text[i] != '}' &&
                   !(text[i] == '.' && is_break(i + 1)))
                ++i;
            out.push_back(text.substr(start, i - start));
        }
    }
    return out;
}

bool iequals(const std::string& a, const char* b) { return to_lower_ascii(a) == to_lower_ascii(b); }

QueryTerm term_from(const std::string& tok) {
    if (tok.empty()) malformed("empty term");
    if (tok[0] == '?' || tok[0] == '$') {
        if (tok.size() == 1) malformed("bare '?'");
        return {QueryTerm::Kind::Variable, tok.substr(1)};
    }
    if (tok[0] == '"') return {QueryTerm::Kind::Literal, tok.substr(1, tok.size() - 2)};
    if (tok[0] == '<') {
        std::string inner = tok.substr(1, tok.size() - 2);
        auto cut = inner.find_last_of("#/");
        return {QueryTerm::Kind::Id, cut == std::string::npos ? inner : inner.substr(cut + 1)};
    }
    if (tok == "a" || tok == "rdf:type") return {QueryTerm::Kind::Id, "a"};
    auto colon = tok.find(':');
    return {QueryTerm::Kind::Id, colon == std::string::npos ? tok : tok.substr(colon + 1)};
}

}  // namespace

Query parse_query(const std::string& text) {
    auto toks = tokenize(text);
    std::size_t i = 0;
    while (i < toks.size() && iequals(toks[i], "PREFIX")) {
        if (i + 2 >= toks.size()) malformed("truncated PREFIX");
        i += 3;
    }
    if (i >= toks.size() || !iequals(toks[i], "SELECT")) malformed("expected SELECT");
    ++i;
    Query q;
    while (i < toks.size() && !iequals(toks[i], "WHERE") && toks[i] != "{") {
        auto t = term_from(toks[i]);
        if (!t.is_var()) malformed("SELECT expects variables, got '" + toks[i] + "'");
        if (std::find(q.select.begin(), q.select.end(), t.value) == q.select.end()) q.select.push_back(t.value);
        ++i;
    }
    if (q.select.empty()) malformed("SELECT lists no variables");
    if (i < toks.size() && iequals(toks[i], "WHERE")) ++i;
    if (i >= toks.size() || toks[i] != "{") malformed("expected '{'");
    ++i;
    std::vector<std::string> clause;
    auto flush = [&] {
        if (clause.empty()) return;
        if (clause.size() != 3) malformed("triple pattern needs 3 terms, got " + std::to_string(clause.size()));
        q.where.push_back({term_from(clause[0]), term_from(clause[1]), term_from(clause[2])});
        clause.clear();
    };
    bool closed = false;
    for (; i < toks.size(); ++i) {
        if (toks[i] == "}") {
            flush();
            closed = true;
            ++i;
            break;
        }
        if (toks[i] == ".") {
            flush();
            continue;
        }
        clause.push_back(toks[i]);
        if (clause.size() > 3) malformed("missing '.' between triple patterns");
    }
    if (!closed) malformed("expected '}'");
    if (i < toks.size() && !(toks[i] == ";" && i + 1 == toks.size())) malformed("trailing tokens after '}'");
    validate_query(q);
    return q;
}

std::string format_query(const Query& q) {
    auto term = [](const QueryTerm& t) {
        switch (t.kind) {
        case QueryTerm::Kind::Variable: return "?" + t.value;
        case QueryTerm::Kind::Literal: return "\"" + t.value + "\"";
        case QueryTerm::Kind::Id: return t.value;
        }
        return std::string();
    };
    std::string s = "SELECT";
    for (const auto& v : q.select) s += " ?" + v;
    s += " WHERE {";
    for (const auto& p : q.where) s += " " + term(p.subject) + " " + term(p.predicate) + " " + term(p.object) + " .";
    return s + " }";
}

void validate_query(const Query& q) {
    if (q.select.empty()) malformed("no select variables");
    if (q.where.empty()) malformed("empty WHERE clause");
    std::set<std::string> vars;
    for (const auto& p : q.where) {
        for (const auto* t : {&p.subject, &p.predicate, &p.object})
            if (t->is_var()) vars.insert(t->value);
        if (p.subject.kind == QueryTerm::Kind::Literal) malformed("literal in subject position");
        if (p.predicate.kind == QueryTerm::Kind::Literal) malformed("literal in predicate position");
        if (!p.predicate.is_var()) {
            if (p.predicate.value == "a") {
                if (p.object.kind == QueryTerm::Kind::Literal) malformed("concept expected after 'a'");
                if (p.object.kind == QueryTerm::Kind::Id && !parse_concept(p.object.value))
                    malformed("unknown concept '" + p.object.value + "'");
            } else if (!parse_predicate(p.predicate.value)) {
                malformed("unknown predicate '" + p.predicate.value + "'");
            }
        }
    }
    for (const auto& v : q.select)
        if (!vars.contains(v)) malformed("select variable ?" + v + " does not occur in WHERE");
}

namespace {

using QBinding = std::map<std::string, ResultValue>;

ResultValue to_value(const Term& t) {
    return {t.is_literal() ? ResultValue::Kind::Literal : ResultValue::Kind::Uri, t.value};
}

class QueryEval {
public:
    QueryEval(const KnowledgeBase& kb, const Query& q) : kb_(kb), q_(q) {}

    std::set<std::vector<ResultValue>> run() {
        QBinding b;
        step(0, b);
        return std::move(rows_);
    }

private:
    std::optional<ResultValue> resolve(const QueryTerm& t, const QBinding& b) const {
        switch (t.kind) {
        case QueryTerm::Kind::Variable: {
            auto it = b.find(t.value);
            if (it == b.end()) return std::nullopt;
            return it->second;
        }
        case QueryTerm::Kind::Id: return ResultValue{ResultValue::Kind::Uri, t.value};
        case QueryTerm::Kind::Literal: return ResultValue{ResultValue::Kind::Literal, t.value};
        }
        return std::nullopt;
    }

    void extend(std::size_t i, QBinding& b, const std::vector<std::pair<const QueryTerm*, ResultValue>>& pairs) {
        std::vector<std::string> added;
        bool ok = true;
        for (const auto& [t, v] : pairs) {
            if (!t->is_var()) {
                if (*resolve(*t, b) != v) ok = false;
            } else if (auto it = b.find(t->value); it != b.end()) {
                if (it->second != v) ok = false;
            } else {
                b.emplace(t->value, v);
                added.push_back(t->value);
            }
            if (!ok) break;
        }
        if (ok) step(i + 1, b);
        for (const auto& v : added) b.erase(v);
    }

    void step(std::size_t i, QBinding& b) {
        if (i == q_.where.size()) {
            std::vector<ResultValue> row;
            for (const auto& v : q_.select) row.push_back(b.at(v));
            rows_.insert(std::move(row));
            return;
        }
        const auto& p = q_.where[i];
        auto s = resolve(p.subject, b);
        if (s && s->kind == ResultValue::Kind::Literal) return;
        auto pred = resolve(p.predicate, b);

        if (pred && pred->kind == ResultValue::Kind::Uri && pred->value == "a") {
            auto visit = [&](const Instance& inst) {
                for (Concept c : inst.concepts())
                    extend(i, b, {{&p.subject, {ResultValue::Kind::Uri, inst.id}},
                                  {&p.object, {ResultValue::Kind::Uri, std::string(to_string(c))}}});
            };
            if (s) {
                if (const Instance* inst = kb_.find_instance(s->value)) visit(*inst);
            } else {
                for (const Instance* inst : kb_.instances()) visit(*inst);
            }
            return;
        }

        FactPattern fp;
        if (s) fp.subject = s->value;
        if (pred) {
            auto parsed = parse_predicate(pred->value);
            if (!parsed) return;
            fp.predicate = *parsed;
        }
        for (const auto& f : kb_.match(fp)) {
            extend(i, b, {{&p.subject, {ResultValue::Kind::Uri, f.subject}},
                          {&p.predicate, {ResultValue::Kind::Uri, std::string(to_string(f.predicate))}},
                          {&p.object, to_value(f.object)}});
        }
    }

    const KnowledgeBase& kb_;
    const Query& q_;
    std::set<std::vector<ResultValue>> rows_;
};

}  // namespace

ResultTable run_query(const KnowledgeBase& kb, const Query& q) {
    validate_query(q);
    ResultTable t;
    t.variables = q.select;
    for (auto& row : QueryEval(kb, q).run()) t.rows.push_back(row);
    return t;
}

const std::map<std::string, Query>& canned_queries() {
    static const std::map<std::string, Query> queries = [] {
        const std::map<std::string, std::string> text{
            {"common-goals", "SELECT ?goal ?description WHERE { ?network hasCommonGoal ?goal . ?goal description ?description . }"},
            {"relationships",
             "SELECT ?relationship ?type ?p1 ?p2 ?duration WHERE { ?network hasRelationship ?relationship . "
             "?relationship hasType ?type . ?relationship P1 ?p1 . ?relationship P2 ?p2 . "
             "?relationship hasDuration ?duration . }"},
            {"topologies",
             "SELECT ?topology ?power ?duration ?type WHERE { ?network hasTopology ?topology . "
             "?topology hasPower ?power . ?topology hasDuration ?duration . ?topology hasType ?type . }"},
            {"participants-roles", "SELECT ?name ?role WHERE { ?P name ?name . ?P playRole ?role . }"},
            {"abstract-services", "SELECT ?participant ?service WHERE { ?participant provideAService ?service . }"},
            {"business-services",
             "SELECT ?participant ?service ?direction ?resource WHERE { ?participant provideBusinessService ?service . "
             "?service ?direction ?resource . ?resource a Resource . }"},
            {"dependencies",
             "SELECT ?dependency ?from ?to ?resource WHERE { ?dependency fromBusinessService ?from . "
             "?dependency toBusinessService ?to . ?dependency containResource ?resource . }"},
            {"mis-services",
             "SELECT ?dependency ?misService WHERE { ?dependency isCoordinatedBy ?misService . ?misService a MISService . }"},
        };
        std::map<std::string, Query> out;
        for (const auto& [name, q] : text) out.emplace(name, parse_query(q));
        return out;
    }();
    return queries;
}

std::string serialize_results(const ResultTable& table, const std::string& base) {
    XmlWriter w(true);
    w.declaration();
    w.open("sparql", {{"xmlns", "http://www.w3.org/2005/sparql-results#"},
                      {"xmlns:rdf", "http://www.w3.org/1999/02/22-rdf-syntax-ns#"}});
    w.open("head");
    for (const auto& v : table.variables) w.empty("variable", {{"name", v}});
    w.close();
    w.open("results", {{"ordered", "false"}, {"distinct", "false"}});
    for (const auto& row : table.rows) {
        w.open("result");
        for (std::size_t k = 0; k < row.size(); ++k) {
            w.open("binding", {{"name", table.variables[k]}});
            if (row[k].kind == ResultValue::Kind::Uri)
                w.text_element("uri", {}, base + row[k].value);
            else
                w.text_element("literal", {{"xml:lang", "en"}}, row[k].value);
            w.close();
        }
        w.close();
    }
    w.close();
    w.close();
    return w.str();
}

ResultTable parse_results(const std::string& xml, const std::string& base) {
    XmlNode root = parse_xml(xml);
    if (root.local_name() != "sparql") fail(ErrorCode::ParseError, "root element must be 'sparql'");
    ResultTable t;
    auto heads = root.children_named("head");
    auto results = root.children_named("results");
    if (heads.size() != 1 || results.size() != 1) fail(ErrorCode::ParseError, "sparql needs one head and one results");
    for (const auto* v : heads[0]->children_named("variable")) t.variables.push_back(v->attr("name").value_or(""));
    for (const auto* r : results[0]->children_named("result")) {
        std::vector<ResultValue> row(t.variables.size());
        std::vector<bool> seen(t.variables.size(), false);
        for (const auto* b : r->children_named("binding")) {
            auto name = b->attr("name").value_or("");
            auto it = std::find(t.variables.begin(), t.variables.end(), name);
            if (it == t.variables.end()) fail(ErrorCode::ParseError, "binding for undeclared variable '" + name + "'");
            if (b->children.size() != 1) fail(ErrorCode::ParseError, "binding must hold one value");
            const auto& v = b->children.front();
            auto k = static_cast<std::size_t>(it - t.variables.begin());
            if (v.local_name() == "uri") {
                std::string value = v.text;
                if (value.rfind(base, 0) == 0) value = value.substr(base.size());
                row[k] = {ResultValue::Kind::Uri, value};
            } else if (v.local_name() == "literal") {
                row[k] = {ResultValue::Kind::Literal, v.text};
            } else {
                fail(ErrorCode::ParseError, "unsupported binding value <" + v.name + ">");
            }
            seen[k] = true;
        }
        if (std::find(seen.begin(), seen.end(), false) != seen.end()) fail(ErrorCode::ParseError, "result row with unbound variable");
        t.rows.push_back(std::move(row));
    }
    return t;
}

nlohmann::json results_to_json(const ResultTable& table, const std::string& base) {
    nlohmann::json j;
    j["head"]["vars"] = table.variables;
    j["results"]["bindings"] = nlohmann::json::array();
    for (const auto& row : table.rows) {
        nlohmann::json b = nlohmann::json::object();
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (row[k].kind == ResultValue::Kind::Uri)
                b[table.variables[k]] = {{"type", "uri"}, {"value", base + row[k].value}};
            else
                b[table.variables[k]] = {{"type", "literal"}, {"value", row[k].value}, {"xml:lang", "en"}};
        }
        j["results"]["bindings"].push_back(b);
    }
    return j;
}

}  // namespace cbp
