#include "cbp/seed.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "cbp/error.hpp"
#include "cbp/text.hpp"

namespace cbp {

namespace {

std::vector<std::string> list(std::string_view s) {
    std::vector<std::string> out;
    for (auto& item : split(s, ',')) {
        auto t = trim(item);
        if (!t.empty()) out.push_back(t);
    }
    return out;
}

// "name: a, b" -> {name, [a, b]}; "name" -> {name, []}
std::pair<std::string, std::vector<std::string>> head_and_list(const std::string& line) {
    auto colon = line.find(':');
    if (colon == std::string::npos) return {trim(line), {}};
    return {trim(line.substr(0, colon)), list(line.substr(colon + 1))};
}

}  // namespace

SeedRepository parse_seed(std::istream& in) {
    SeedRepository seed;
    std::string section;
    std::string raw;
    int line_no = 0;
    std::map<std::string, std::set<std::string>> names;  // per kind

    auto declare = [&](const std::string& kind, const std::string& name) {
        if (name.empty()) fail(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": empty name");
        if (!names[kind].insert(name).second)
            fail(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": duplicate " + kind + " '" + name + "'");
    };

    while (std::getline(in, raw)) {
        ++line_no;
        auto hash = raw.find('#');
        std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": bad section header");
            section = line.substr(1, line.size() - 2);
            static const std::set<std::string> kSections{"roles", "abstract-services", "business-services",
                                                         "resources", "coordination-services"};
            if (!kSections.contains(section))
                fail(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": unknown section [" + section + "]");
            continue;
        }
        if (section.empty()) fail(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": record outside a section");

        if (section == "resources") {
            declare(section, line);
            seed.resources.push_back(line);
        } else if (section == "roles") {
            auto [name, items] = head_and_list(line);
            declare(section, name);
            seed.roles.push_back({name, items});
        } else if (section == "abstract-services") {
            auto [name, items] = head_and_list(line);
            declare(section, name);
            seed.abstract_services.push_back({name, items});
        } else if (section == "coordination-services") {
            auto [name, items] = head_and_list(line);
            declare(section, name);
            seed.coordination_services.push_back({name, items});
        } else {
            auto fields = split(line, ';');
            SeedRepository::BusinessService bs{trim(fields[0]), {}, {}};
            for (std::size_t i = 1; i < fields.size(); ++i) {
                auto f = trim(fields[i]);
                if (f.rfind("in:", 0) == 0)
                    bs.inputs = list(f.substr(3));
                else if (f.rfind("out:", 0) == 0)
                    bs.outputs = list(f.substr(4));
                else if (!f.empty())
                    fail(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected 'in:' or 'out:'");
            }
            declare(section, bs.name);
            seed.business_services.push_back(std::move(bs));
        }
    }

    auto check = [&](const std::string& kind, const std::string& owner, const std::vector<std::string>& refs) {
        for (const auto& r : refs)
            if (!names[kind].contains(r))
                fail(ErrorCode::BrokenReference, "'" + owner + "' refers to undeclared " + kind + " '" + r + "'");
    };
    for (const auto& r : seed.roles) check("abstract-services", r.name, r.abstract_services);
    for (const auto& a : seed.abstract_services) check("business-services", a.name, a.business_services);
    for (const auto& b : seed.business_services) {
        check("resources", b.name, b.inputs);
        check("resources", b.name, b.outputs);
    }
    for (const auto& c : seed.coordination_services) check("resources", c.name, c.resources);
    return seed;
}

SeedRepository parse_seed_string(const std::string& text) {
    std::istringstream is(text);
    return parse_seed(is);
}

KnowledgeBase seed_to_kb(const SeedRepository& seed) {
    KnowledgeBase kb;
    auto add = [&](const std::string& name, Concept c) {
        const std::string id = slug(name);
        if (const Instance* existing = kb.find_instance(id))
            fail(ErrorCode::ValidationError, "seed names '" + existing->label + "' and '" + name +
                                                 "' map to the same id '" + id + "'");
        kb.add_instance(id, name, {c});
        kb.assert_fact({id, Predicate::name, Term::literal(name), {}});
        return id;
    };
    auto link = [&](const std::string& s, Predicate p, const std::string& o) {
        kb.assert_fact({slug(s), p, Term::id(slug(o)), {}});
    };

    for (const auto& r : seed.resources) add(r, Concept::Resource);
    for (const auto& b : seed.business_services) add(b.name, Concept::BusinessService);
    for (const auto& a : seed.abstract_services) add(a.name, Concept::AbstractService);
    for (const auto& r : seed.roles) add(r.name, Concept::Role);
    for (const auto& c : seed.coordination_services) add(c.name, Concept::CoordinationService);

    for (const auto& b : seed.business_services) {
        for (const auto& i : b.inputs) link(b.name, Predicate::hasInput, i);
        for (const auto& o : b.outputs) link(b.name, Predicate::hasOutput, o);
    }
    for (const auto& a : seed.abstract_services)
        for (const auto& b : a.business_services) link(a.name, Predicate::hasBusinessService, b);
    for (const auto& r : seed.roles)
        for (const auto& a : r.abstract_services) link(r.name, Predicate::performAService, a);
    for (const auto& c : seed.coordination_services)
        for (const auto& res : c.resources) link(c.name, Predicate::manipulateResource, res);
    return kb;
}

KnowledgeBase load_seed(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::IoError, "cannot open seed file " + path);
    return seed_to_kb(parse_seed(in));
}

}  // namespace cbp
