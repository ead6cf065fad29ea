#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cbp {

// Parsed element tree. Attribute order is not preserved; child order is.
struct XmlNode {
    std::string name;  // qualified, e.g. "bpmn:task"
    std::map<std::string, std::string> attrs;
    std::string text;  // trimmed character data
    std::vector<XmlNode> children;

    std::string_view local_name() const;
    std::optional<std::string> attr(const std::string& key) const;
    std::vector<const XmlNode*> children_named(std::string_view local) const;
};

// Throws ParseError on malformed input.
XmlNode parse_xml(const std::string& text);

using XmlAttrs = std::vector<std::pair<std::string, std::string>>;

// Deterministic serializer: either two-space indented, one element per
// line, or canonical single-line with no inter-element whitespace.
class XmlWriter {
public:
    explicit XmlWriter(bool pretty = true);

    void declaration();
    void open(const std::string& name, const XmlAttrs& attrs = {});
    void empty(const std::string& name, const XmlAttrs& attrs = {});
    void text_element(const std::string& name, const XmlAttrs& attrs, const std::string& text);
    void close();

    std::string str() const;

private:
    void indent();
    static std::string attrs_text(const XmlAttrs& attrs);

    bool pretty_;
    std::string out_;
    std::vector<std::string> stack_;
};

}  // namespace cbp
