#include "fpm/xml_lite.hpp"

#include <cctype>

namespace fpm::xml {

const std::string *Element::attr(std::string_view key) const {
    for (const auto &[k, v] : attributes)
        if (k == key)
            return &v;
    return nullptr;
}

const Element *Element::first(std::string_view tag) const {
    for (const Element &c : children)
        if (c.name == tag)
            return &c;
    return nullptr;
}

std::vector<const Element *> Element::all(std::string_view tag) const {
    std::vector<const Element *> out;
    for (const Element &c : children)
        if (c.name == tag)
            out.push_back(&c);
    return out;
}

namespace {

class Reader {
public:
    explicit Reader(std::string_view bytes) : src_(bytes) {}

    Element parse() {
        skip_misc();
        if (eof())
            throw MalformedReport(line_, "document has no root element");
        Element root = parse_element();
        skip_misc();
        if (!eof())
            throw MalformedReport(line_, "content after the root element");
        return root;
    }

private:
    std::string_view src_;
    size_t pos_ = 0;
    int line_ = 1;

    bool eof() const { return pos_ >= src_.size(); }
    char peek() const { return src_[pos_]; }
    char take() {
        char c = src_[pos_++];
        if (c == '\n')
            ++line_;
        return c;
    }
    bool starts_with(std::string_view s) const { return src_.substr(pos_, s.size()) == s; }
    void expect(char c, const char *what) {
        if (eof() || peek() != c)
            throw MalformedReport(line_, std::string("expected ") + what);
        take();
    }
    void skip_ws() {
        while (!eof() && std::isspace(static_cast<unsigned char>(peek())))
            take();
    }
    void skip_until(std::string_view terminator) {
        while (!eof() && !starts_with(terminator))
            take();
        if (eof())
            throw MalformedReport(line_, "unterminated markup");
        for (size_t i = 0; i < terminator.size(); ++i)
            take();
    }

    /// Whitespace, text content, comments, PIs, doctype, CDATA.
    void skip_misc() {
        while (!eof()) {
            if (starts_with("<!--")) {
                skip_until("-->");
            } else if (starts_with("<![CDATA[")) {
                skip_until("]]>");
            } else if (starts_with("<?")) {
                skip_until("?>");
            } else if (starts_with("<!")) {
                skip_until(">");
            } else if (peek() == '<') {
                return;
            } else {
                take(); // text content is not modeled
            }
        }
    }

    std::string parse_name() {
        std::string name;
        while (!eof()) {
            char c = peek();
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == ':' ||
                c == '.')
                name += take();
            else
                break;
        }
        if (name.empty())
            throw MalformedReport(line_, "expected a name");
        return name;
    }

    std::string decode_entities(std::string_view raw) {
        std::string out;
        for (size_t i = 0; i < raw.size();) {
            if (raw[i] != '&') {
                out += raw[i++];
                continue;
            }
            size_t semi = raw.find(';', i);
            if (semi == std::string_view::npos) {
                out += raw[i++]; // tolerate a stray ampersand
                continue;
            }
            std::string_view entity = raw.substr(i + 1, semi - i - 1);
            if (entity == "lt") out += '<';
            else if (entity == "gt") out += '>';
            else if (entity == "amp") out += '&';
            else if (entity == "quot") out += '"';
            else if (entity == "apos") out += '\'';
            else if (!entity.empty() && entity[0] == '#') {
                long code = 0;
                try {
                    code = entity[1] == 'x' || entity[1] == 'X'
                               ? std::stol(std::string(entity.substr(2)), nullptr, 16)
                               : std::stol(std::string(entity.substr(1)));
                } catch (...) {
                    code = -1;
                }
                if (code >= 0 && code < 128)
                    out += static_cast<char>(code);
                // multi-byte code points are dropped rather than mangled
            } else {
                out += '&';
                out += entity;
                out += ';';
            }
            i = semi + 1;
        }
        return out;
    }

    Element parse_element() {
        expect('<', "'<'");
        Element element;
        element.name = parse_name();

        while (true) {
            skip_ws();
            if (eof())
                throw MalformedReport(line_, "unterminated start tag");
            if (peek() == '/') {
                take();
                expect('>', "'>' after '/'");
                return element; // self-closing
            }
            if (peek() == '>') {
                take();
                break;
            }
            std::string key = parse_name();
            skip_ws();
            expect('=', "'=' after attribute name");
            skip_ws();
            if (eof() || (peek() != '"' && peek() != '\''))
                throw MalformedReport(line_, "attribute value must be quoted");
            char quote = take();
            std::string raw;
            while (!eof() && peek() != quote)
                raw += take();
            expect(quote, "closing attribute quote");
            element.attributes.emplace_back(std::move(key), decode_entities(raw));
        }

        // content
        while (true) {
            skip_misc();
            if (eof())
                throw MalformedReport(line_, "unterminated element <" + element.name + ">");
            if (starts_with("</")) {
                take();
                take();
                std::string closing = parse_name();
                if (closing != element.name)
                    throw MalformedReport(line_, "mismatched closing tag </" + closing +
                                                     "> for <" + element.name + ">");
                skip_ws();
                expect('>', "'>' in closing tag");
                return element;
            }
            element.children.push_back(parse_element());
        }
    }
};

} // namespace

Element parse_document(std::string_view bytes) { return Reader(bytes).parse(); }

} // namespace fpm::xml
