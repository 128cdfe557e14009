#include "fpm/toml_lite.hpp"

#include <cctype>

namespace fpm::toml {

const Value *Document::find(const std::string &section, const std::string &key) const {
    const Table *table = &root;
    if (!section.empty()) {
        auto it = sections.find(section);
        if (it == sections.end())
            return nullptr;
        table = &it->second;
    }
    auto it = table->find(key);
    return it == table->end() ? nullptr : &it->second;
}

std::string Document::get_string(const std::string &section, const std::string &key,
                                 const std::string &fallback) const {
    const Value *v = find(section, key);
    return v && v->type == Value::Type::String ? v->str : fallback;
}

long long Document::get_integer(const std::string &section, const std::string &key,
                                long long fallback) const {
    const Value *v = find(section, key);
    if (!v)
        return fallback;
    if (v->type == Value::Type::Integer)
        return v->integer;
    if (v->type == Value::Type::Float)
        return static_cast<long long>(v->real);
    return fallback;
}

double Document::get_real(const std::string &section, const std::string &key,
                          double fallback) const {
    const Value *v = find(section, key);
    if (!v)
        return fallback;
    if (v->type == Value::Type::Float)
        return v->real;
    if (v->type == Value::Type::Integer)
        return static_cast<double>(v->integer);
    return fallback;
}

namespace {

class Reader {
public:
    Reader(std::string_view text, std::string source) : src_(text), source_(std::move(source)) {}

    Document parse() {
        Document doc;
        Table *current = &doc.root;
        while (!eof()) {
            skip_ws_and_comments();
            if (eof())
                break;
            if (peek() == '[') {
                current = parse_header(doc);
                continue;
            }
            auto [key, value] = parse_key_value();
            (*current)[key] = std::move(value);
        }
        return doc;
    }

private:
    std::string_view src_;
    std::string source_;
    size_t pos_ = 0;
    int line_ = 1;

    [[noreturn]] void fail(const std::string &message) {
        throw SchemaError(1, source_ + ":" + std::to_string(line_), message);
    }

    bool eof() const { return pos_ >= src_.size(); }
    char peek() const { return src_[pos_]; }
    char take() {
        char c = src_[pos_++];
        if (c == '\n')
            ++line_;
        return c;
    }

    void skip_ws_and_comments() {
        while (!eof()) {
            char c = peek();
            if (c == '#') {
                while (!eof() && peek() != '\n')
                    take();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                take();
            } else {
                return;
            }
        }
    }

    void skip_inline_ws() {
        while (!eof() && (peek() == ' ' || peek() == '\t'))
            take();
    }

    std::string parse_key() {
        std::string key;
        while (!eof()) {
            char c = peek();
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-')
                key += take();
            else
                break;
        }
        if (key.empty())
            fail("expected a key");
        return key;
    }

    Table *parse_header(Document &doc) {
        take(); // '['
        bool table_array = !eof() && peek() == '[';
        if (table_array)
            take();
        std::string name = parse_key();
        if (eof() || take() != ']')
            fail("expected ']' in table header");
        if (table_array && (eof() || take() != ']'))
            fail("expected ']]' in array-of-tables header");
        if (table_array) {
            doc.table_arrays[name].emplace_back();
            return &doc.table_arrays[name].back();
        }
        return &doc.sections[name];
    }

    std::pair<std::string, Value> parse_key_value() {
        std::string key = parse_key();
        skip_inline_ws();
        if (eof() || take() != '=')
            fail("expected '=' after key '" + key + "'");
        skip_inline_ws();
        return {key, parse_value()};
    }

    Value parse_value() {
        if (eof())
            fail("expected a value");
        char c = peek();
        if (c == '"')
            return string_value(parse_string());
        if (c == '[')
            return parse_string_array();
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+')
            return parse_number();
        std::string word = parse_key();
        if (word == "true" || word == "false") {
            Value v;
            v.type = Value::Type::Boolean;
            v.boolean = word == "true";
            return v;
        }
        fail("unsupported value '" + word + "'");
    }

    static Value string_value(std::string s) {
        Value v;
        v.type = Value::Type::String;
        v.str = std::move(s);
        return v;
    }

    std::string parse_string() {
        if (src_.substr(pos_, 3) == "\"\"\"") {
            pos_ += 3;
            if (!eof() && peek() == '\n')
                take(); // leading newline after the opening quotes is trimmed
            std::string out;
            while (src_.substr(pos_, 3) != "\"\"\"") {
                if (eof())
                    fail("unterminated multi-line string");
                out += take();
            }
            pos_ += 3;
            return out;
        }
        take(); // opening quote
        std::string out;
        while (!eof() && peek() != '"') {
            char c = take();
            if (c == '\n')
                fail("basic strings cannot span lines");
            if (c == '\\') {
                if (eof())
                    fail("dangling escape");
                char e = take();
                switch (e) {
                case 'n': out += '\n'; break;
                case 't': out += '\t'; break;
                case 'r': out += '\r'; break;
                case '"': out += '"'; break;
                case '\\': out += '\\'; break;
                default: fail(std::string("unsupported escape \\") + e);
                }
            } else {
                out += c;
            }
        }
        if (eof())
            fail("unterminated string");
        take(); // closing quote
        return out;
    }

    Value parse_string_array() {
        take(); // '['
        Value v;
        v.type = Value::Type::StringArray;
        while (true) {
            skip_ws_and_comments();
            if (eof())
                fail("unterminated array");
            if (peek() == ']') {
                take();
                break;
            }
            if (peek() != '"')
                fail("arrays may only contain strings");
            v.array.push_back(parse_string());
            skip_ws_and_comments();
            if (!eof() && peek() == ',')
                take();
        }
        return v;
    }

    Value parse_number() {
        std::string text;
        while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '.' ||
                          peek() == '-' || peek() == '+'))
            text += take();
        Value v;
        try {
            if (text.find('.') != std::string::npos || text.find('e') != std::string::npos ||
                text.find('E') != std::string::npos) {
                v.type = Value::Type::Float;
                v.real = std::stod(text);
            } else {
                v.type = Value::Type::Integer;
                v.integer = std::stoll(text);
            }
        } catch (...) {
            fail("malformed number '" + text + "'");
        }
        return v;
    }
};

} // namespace

Document parse(std::string_view text, const std::string &source_name) {
    return Reader(text, source_name).parse();
}

} // namespace fpm::toml
