#include "cbp/xml.hpp"

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <sstream>

#include "cbp/error.hpp"
#include "cbp/text.hpp"

namespace cbp {

namespace pt = boost::property_tree;

std::string_view XmlNode::local_name() const {
    std::string_view n = name;
    auto colon = n.find(':');
    return colon == std::string_view::npos ? n : n.substr(colon + 1);
}

std::optional<std::string> XmlNode::attr(const std::string& key) const {
    auto it = attrs.find(key);
    if (it == attrs.end()) return std::nullopt;
    return it->second;
}

std::vector<const XmlNode*> XmlNode::children_named(std::string_view local) const {
    std::vector<const XmlNode*> out;
    for (const auto& c : children)
        if (c.local_name() == local) out.push_back(&c);
    return out;
}

namespace {

XmlNode convert(const std::string& name, const pt::ptree& tree) {
    XmlNode node;
    node.name = name;
    node.text = trim(tree.data());
    for (const auto& [key, child] : tree) {
        if (key == "<xmlattr>") {
            for (const auto& [attr, value] : child) node.attrs[attr] = value.data();
        } else if (key == "<xmlcomment>") {
            continue;
        } else {
            node.children.push_back(convert(key, child));
        }
    }
    return node;
}

}  // namespace

XmlNode parse_xml(const std::string& text) {
    pt::ptree tree;
    std::istringstream in(text);
    try {
        pt::read_xml(in, tree, pt::xml_parser::no_comments);
    } catch (const pt::xml_parser_error& e) {
        fail(ErrorCode::ParseError, std::string("XML: ") + e.what());
    }
    std::vector<XmlNode> roots;
    for (const auto& [key, child] : tree) {
        if (key == "<xmlcomment>") continue;
        roots.push_back(convert(key, child));
    }
    if (roots.size() != 1) fail(ErrorCode::ParseError, "XML: expected exactly one root element");
    return std::move(roots.front());
}

XmlWriter::XmlWriter(bool pretty) : pretty_(pretty) {}

void XmlWriter::declaration() {
    out_ += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>";
    if (pretty_) out_ += '\n';
}

std::string XmlWriter::attrs_text(const XmlAttrs& attrs) {
    std::string s;
    for (const auto& [k, v] : attrs) s += " " + k + "=\"" + xml_escape(v) + "\"";
    return s;
}

void XmlWriter::indent() {
    if (pretty_) out_.append(stack_.size() * 2, ' ');
}

void XmlWriter::open(const std::string& name, const XmlAttrs& attrs) {
    indent();
    out_ += "<" + name + attrs_text(attrs) + ">";
    if (pretty_) out_ += '\n';
    stack_.push_back(name);
}

void XmlWriter::empty(const std::string& name, const XmlAttrs& attrs) {
    indent();
    out_ += "<" + name + attrs_text(attrs) + "/>";
    if (pretty_) out_ += '\n';
}

void XmlWriter::text_element(const std::string& name, const XmlAttrs& attrs, const std::string& text) {
    indent();
    out_ += "<" + name + attrs_text(attrs) + ">" + xml_escape(text) + "</" + name + ">";
    if (pretty_) out_ += '\n';
}

void XmlWriter::close() {
    std::string name = stack_.back();
    stack_.pop_back();
    indent();
    out_ += "</" + name + ">";
    if (pretty_) out_ += '\n';
}

std::string XmlWriter::str() const {
    if (pretty_ || out_.empty()) return out_;
    return out_ + "\n";
}

}  // namespace cbp
