#include "fpm/parser.hpp"

#include "fpm/lexer.hpp"

#include <cassert>

namespace fpm {

namespace {

bool is_type_start(const Token &t) {
    return t.is_keyword("int") || t.is_keyword("float") || t.is_keyword("char") ||
           t.is_keyword("void") || t.is_keyword("const") || t.is_keyword("extern");
}

int binary_precedence(std::string_view op) {
    if (op == "*" || op == "/" || op == "%") return 13;
    if (op == "+" || op == "-") return 12;
    if (op == "<<" || op == ">>") return 11;
    if (op == "<" || op == "<=" || op == ">" || op == ">=") return 10;
    if (op == "==" || op == "!=") return 9;
    if (op == "&") return 8;
    if (op == "^") return 7;
    if (op == "|") return 6;
    if (op == "&&") return 5;
    if (op == "||") return 4;
    return -1;
}

bool is_assign_op(std::string_view op) {
    return op == "=" || op == "+=" || op == "-=" || op == "*=" || op == "/=" || op == "%=";
}

class Parser {
public:
    Parser(std::string_view source, std::string filename, NodeTable &nodes)
        : src_(source), filename_(std::move(filename)), nodes_(nodes) {}

    ParseResult run() {
        ParseResult result;
        try {
            tokens_ = tokenize(src_, filename_);
        } catch (const SyntaxError &e) {
            result.diagnostics.push_back({Diagnostic::Kind::SyntaxError, e.loc(), e.what()});
        }
        if (tokens_.empty())
            tokens_.push_back(Token{TokenKind::EndOfFile, "", SourceLoc{filename_, 1, 1}, 0});

        size_t root_start = 0;
        std::vector<NodeId> top_level;
        while (!at_eof()) {
            size_t checkpoint = nodes_.size();
            size_t tok_checkpoint = pos_;
            try {
                top_level.push_back(parse_top_level());
            } catch (const SyntaxError &e) {
                nodes_.truncate(checkpoint);
                result.diagnostics.push_back({Diagnostic::Kind::SyntaxError, e.loc(), e.what()});
                recover(tok_checkpoint);
            }
        }

        AstNode tu;
        tu.kind = NodeKind::TranslationUnit;
        tu.loc = SourceLoc{filename_, 1, 1};
        tu.code = std::string(src_);
        tu.children = std::move(top_level);
        result.root = nodes_.add(std::move(tu));
        (void)root_start;
        return result;
    }

private:
    std::string_view src_;
    std::string filename_;
    NodeTable &nodes_;
    std::vector<Token> tokens_;
    size_t pos_ = 0;
    NodeId current_function_ = kNoNode;

    // --- token helpers ---------------------------------------------------

    const Token &peek(size_t ahead = 0) const {
        size_t i = pos_ + ahead;
        return i < tokens_.size() ? tokens_[i] : tokens_.back();
    }
    const Token &advance() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }
    bool at_eof() const { return peek().kind == TokenKind::EndOfFile; }

    const Token &expect_punct(std::string_view p) {
        if (!peek().is_punct(p))
            throw SyntaxError(peek().loc, "expected '" + std::string(p) + "', got '" + peek().text + "'");
        return advance();
    }
    const Token &expect_identifier(const char *what) {
        if (peek().kind != TokenKind::Identifier)
            throw SyntaxError(peek().loc, std::string("expected ") + what + ", got '" + peek().text + "'");
        return advance();
    }

    void recover(size_t from) {
        if (pos_ == from && !at_eof())
            ++pos_; // guarantee progress
        int depth = 0;
        while (!at_eof()) {
            const Token &t = peek();
            if (depth <= 0 && (is_type_start(t)))
                return;
            if (t.is_punct("{")) {
                ++depth;
            } else if (t.is_punct("}")) {
                --depth;
                if (depth < 0) {
                    advance();
                    return;
                }
            } else if (t.is_punct(";") && depth <= 0) {
                advance();
                return;
            }
            advance();
        }
    }

    // --- node helpers -----------------------------------------------------

    /// Finish a node whose span runs from token `first` to the token before
    /// the current position.
    NodeId finish(AstNode node, size_t first_tok) {
        size_t last = pos_ == 0 ? 0 : pos_ - 1;
        size_t begin = tokens_[first_tok].offset;
        size_t end = tokens_[last].offset + tokens_[last].text.size();
        node.loc = tokens_[first_tok].loc;
        node.code = std::string(src_.substr(begin, end - begin));
        if (node.enclosing_function == std::nullopt && current_function_ != kNoNode)
            node.enclosing_function = current_function_;
        return nodes_.add(std::move(node));
    }

    // --- grammar ----------------------------------------------------------

    std::string parse_type_spec(bool *is_extern) {
        std::string text;
        if (peek().is_keyword("extern")) {
            if (is_extern)
                *is_extern = true;
            advance();
        }
        if (peek().is_keyword("const")) {
            text += "const ";
            advance();
        }
        const Token &base = peek();
        if (!(base.is_keyword("int") || base.is_keyword("float") || base.is_keyword("char") ||
              base.is_keyword("void")))
            throw SyntaxError(base.loc, "expected a type, got '" + base.text + "'");
        text += base.text;
        advance();
        while (peek().is_punct("*")) {
            text += "*";
            advance();
        }
        return text;
    }

    NodeId parse_top_level() {
        const Token &t = peek();
        if (!is_type_start(t))
            throw SyntaxError(t.loc, "expected a declaration, got '" + t.text + "'");

        size_t first = pos_;
        bool is_extern = false;
        std::string type_text = parse_type_spec(&is_extern);
        const Token &name = expect_identifier("a name");

        if (peek().is_punct("(")) {
            if (is_extern)
                throw SyntaxError(name.loc, "function prototypes are not supported");
            return parse_function_def(first, type_text, name.text);
        }
        return parse_var_decl_tail(first, type_text, name.text, is_extern);
    }

    NodeId parse_function_def(size_t first, const std::string &ret_type, const std::string &name) {
        expect_punct("(");
        std::vector<NodeId> params;
        if (!peek().is_punct(")")) {
            if (peek().is_keyword("void") && peek(1).is_punct(")")) {
                advance();
            } else {
                while (true) {
                    params.push_back(parse_param());
                    if (!peek().is_punct(","))
                        break;
                    advance();
                }
            }
        }
        expect_punct(")");

        // The function id must exist before the body so descendants can point
        // at their enclosing function; patch span and children afterwards.
        AstNode fn;
        fn.kind = NodeKind::FunctionDef;
        fn.name = name;
        fn.type_text = ret_type;
        fn.loc = tokens_[first].loc;
        NodeId fn_id = nodes_.add(std::move(fn));
        nodes_[fn_id].enclosing_function = fn_id;
        for (NodeId p : params)
            nodes_[p].enclosing_function = fn_id;

        NodeId prev_fn = current_function_;
        current_function_ = fn_id;
        NodeId body = parse_block();
        current_function_ = prev_fn;

        size_t last = pos_ - 1;
        size_t begin = tokens_[first].offset;
        size_t end = tokens_[last].offset + tokens_[last].text.size();
        nodes_[fn_id].code = std::string(src_.substr(begin, end - begin));
        nodes_[fn_id].children = std::move(params);
        nodes_[fn_id].children.push_back(body);
        return fn_id;
    }

    NodeId parse_param() {
        size_t first = pos_;
        std::string type_text = parse_type_spec(nullptr);
        const Token &name = expect_identifier("a parameter name");
        if (peek().is_punct("[")) {
            advance();
            if (peek().kind == TokenKind::Number)
                advance();
            expect_punct("]");
            type_text += "[]";
        }
        AstNode p;
        p.kind = NodeKind::Param;
        p.name = name.text;
        p.type_text = type_text;
        return finish(std::move(p), first);
    }

    NodeId parse_var_decl_tail(size_t first, const std::string &type_text, const std::string &name,
                               bool is_extern) {
        AstNode decl;
        decl.kind = NodeKind::VarDecl;
        decl.name = name;
        decl.type_text = type_text;
        decl.is_extern = is_extern;
        if (peek().is_punct("[")) {
            advance();
            if (peek().kind == TokenKind::Number)
                advance();
            else if (!peek().is_punct("]"))
                throw SyntaxError(peek().loc, "array dimension must be an integer literal");
            expect_punct("]");
            decl.type_text += "[]";
        }
        if (peek().is_punct("=")) {
            advance();
            if (is_extern)
                throw SyntaxError(peek().loc, "extern declaration cannot have an initializer");
            decl.has_init = true;
            decl.children.push_back(parse_expr());
        }
        expect_punct(";");
        return finish(std::move(decl), first);
    }

    NodeId parse_block() {
        size_t first = pos_;
        expect_punct("{");
        AstNode block;
        block.kind = NodeKind::Block;
        while (!peek().is_punct("}")) {
            if (at_eof())
                throw SyntaxError(peek().loc, "unterminated block");
            NodeId s = parse_statement();
            if (s != kNoNode)
                block.children.push_back(s);
        }
        expect_punct("}");
        return finish(std::move(block), first);
    }

    /// Returns kNoNode for empty statements (bare ';').
    NodeId parse_statement() {
        const Token &t = peek();
        if (t.is_punct(";")) {
            advance();
            return kNoNode;
        }
        if (t.is_punct("{"))
            return parse_block();
        if (t.is_keyword("if"))
            return parse_if();
        if (t.is_keyword("switch"))
            return parse_switch();
        if (t.is_keyword("while"))
            return parse_while();
        if (t.is_keyword("for"))
            return parse_for();
        if (t.is_keyword("return"))
            return parse_return();
        if (t.is_keyword("break") || t.is_keyword("continue"))
            throw SyntaxError(t.loc, "'" + t.text + "' is not supported (switch cases do not fall through)");
        if (is_type_start(t)) {
            size_t first = pos_;
            bool is_extern = false;
            std::string type_text = parse_type_spec(&is_extern);
            const Token &name = expect_identifier("a variable name");
            return parse_var_decl_tail(first, type_text, name.text, is_extern);
        }
        if (t.kind == TokenKind::Keyword)
            throw SyntaxError(t.loc, "unsupported construct '" + t.text + "'");
        return parse_simple_statement();
    }

    NodeId parse_simple_statement() {
        size_t first = pos_;
        NodeId head = parse_simple_statement_head(first);
        expect_punct(";");
        // Re-span the statement node to include the terminating semicolon.
        size_t last = pos_ - 1;
        size_t begin = tokens_[first].offset;
        size_t end = tokens_[last].offset + tokens_[last].text.size();
        nodes_[head].code = std::string(src_.substr(begin, end - begin));
        return head;
    }

    NodeId parse_simple_statement_head(size_t first) {
        NodeId lhs = parse_postfix();
        if (peek().kind == TokenKind::Punct && is_assign_op(peek().text)) {
            NodeKind k = nodes_[lhs].kind;
            bool indexed = k == NodeKind::BinaryOp && nodes_[lhs].op == "[]";
            bool deref = k == NodeKind::UnaryOp && nodes_[lhs].op == "*";
            if (!(k == NodeKind::Identifier || k == NodeKind::MemberAccess || indexed || deref))
                throw SyntaxError(peek().loc, "left side of assignment is not assignable");
            AstNode assign;
            assign.kind = NodeKind::Assign;
            assign.op = advance().text;
            assign.children.push_back(lhs);
            assign.children.push_back(parse_expr());
            return finish(std::move(assign), first);
        }
        if (nodes_[lhs].kind != NodeKind::Call)
            throw SyntaxError(tokens_[first].loc, "expected an assignment or a call statement");
        return lhs;
    }

    NodeId parse_if() {
        size_t first = pos_;
        advance(); // if
        expect_punct("(");
        NodeId cond = parse_expr();
        expect_punct(")");
        NodeId then_block = parse_block();
        AstNode node;
        node.kind = NodeKind::If;
        node.children = {cond, then_block};
        if (peek().is_keyword("else")) {
            size_t else_first = pos_;
            advance();
            NodeId inner;
            if (peek().is_keyword("if"))
                inner = parse_if();
            else
                inner = parse_block();
            AstNode else_node;
            else_node.kind = NodeKind::Else;
            else_node.children = {inner};
            node.children.push_back(finish(std::move(else_node), else_first));
        }
        return finish(std::move(node), first);
    }

    NodeId parse_switch() {
        size_t first = pos_;
        advance(); // switch
        expect_punct("(");
        NodeId scrutinee = parse_expr();
        expect_punct(")");
        expect_punct("{");
        AstNode node;
        node.kind = NodeKind::Switch;
        node.children.push_back(scrutinee);
        bool seen_default = false;
        while (!peek().is_punct("}")) {
            if (at_eof())
                throw SyntaxError(peek().loc, "unterminated switch");
            if (peek().is_keyword("case")) {
                node.children.push_back(parse_case_clause(false));
            } else if (peek().is_keyword("default")) {
                if (seen_default)
                    throw SyntaxError(peek().loc, "duplicate default clause");
                seen_default = true;
                node.children.push_back(parse_case_clause(true));
            } else {
                throw SyntaxError(peek().loc, "expected 'case' or 'default' inside switch");
            }
        }
        expect_punct("}");
        return finish(std::move(node), first);
    }

    NodeId parse_case_clause(bool is_default) {
        size_t first = pos_;
        advance(); // case / default
        AstNode clause;
        clause.kind = is_default ? NodeKind::Default : NodeKind::Case;
        if (!is_default)
            clause.children.push_back(parse_case_label());
        expect_punct(":");
        while (!peek().is_punct("}") && !peek().is_keyword("case") && !peek().is_keyword("default")) {
            if (at_eof())
                throw SyntaxError(peek().loc, "unterminated case clause");
            NodeId s = parse_statement();
            if (s != kNoNode)
                clause.children.push_back(s);
        }
        return finish(std::move(clause), first);
    }

    NodeId parse_case_label() {
        size_t first = pos_;
        bool neg = peek().is_punct("-");
        if (neg)
            advance();
        const Token &t = peek();
        if (t.kind != TokenKind::Number && t.kind != TokenKind::CharLit)
            throw SyntaxError(t.loc, "case label must be a constant literal");
        advance();
        AstNode lit;
        lit.kind = NodeKind::Literal;
        return finish(std::move(lit), first);
    }

    NodeId parse_while() {
        size_t first = pos_;
        advance(); // while
        expect_punct("(");
        NodeId cond = parse_expr();
        expect_punct(")");
        NodeId body = parse_block();
        AstNode node;
        node.kind = NodeKind::While;
        node.children = {cond, body};
        return finish(std::move(node), first);
    }

    NodeId parse_for() {
        size_t first = pos_;
        advance(); // for
        expect_punct("(");
        AstNode node;
        node.kind = NodeKind::For;
        std::string shape;

        if (!peek().is_punct(";")) {
            if (is_type_start(peek())) {
                size_t decl_first = pos_;
                bool is_extern = false;
                std::string type_text = parse_type_spec(&is_extern);
                const Token &name = expect_identifier("a variable name");
                node.children.push_back(parse_for_decl(decl_first, type_text, name.text));
            } else {
                size_t head = pos_;
                node.children.push_back(parse_simple_statement_head(head));
            }
            shape += 'i';
        }
        expect_punct(";");
        if (!peek().is_punct(";")) {
            node.children.push_back(parse_expr());
            shape += 'c';
        }
        expect_punct(";");
        if (!peek().is_punct(")")) {
            size_t head = pos_;
            NodeId step = parse_simple_statement_head(head);
            if (nodes_[step].kind != NodeKind::Assign && nodes_[step].kind != NodeKind::Call)
                throw SyntaxError(tokens_[head].loc, "for-step must be an assignment or a call");
            node.children.push_back(step);
            shape += 's';
        }
        expect_punct(")");
        node.children.push_back(parse_block());
        node.op = shape; // see for_parts()
        return finish(std::move(node), first);
    }

    NodeId parse_for_decl(size_t first, const std::string &type_text, const std::string &name) {
        AstNode decl;
        decl.kind = NodeKind::VarDecl;
        decl.name = name;
        decl.type_text = type_text;
        if (peek().is_punct("=")) {
            advance();
            decl.has_init = true;
            decl.children.push_back(parse_expr());
        }
        return finish(std::move(decl), first);
    }

    NodeId parse_return() {
        size_t first = pos_;
        advance(); // return
        AstNode node;
        node.kind = NodeKind::Return;
        if (!peek().is_punct(";"))
            node.children.push_back(parse_expr());
        expect_punct(";");
        return finish(std::move(node), first);
    }

    // --- expressions --------------------------------------------------------

    NodeId parse_expr(int min_prec = 0) {
        NodeId lhs = parse_unary();
        while (peek().kind == TokenKind::Punct) {
            int prec = binary_precedence(peek().text);
            if (prec < 0 || prec < min_prec)
                break;
            size_t first_tok = node_first_token(lhs);
            std::string op = advance().text;
            NodeId rhs = parse_expr(prec + 1);
            AstNode bin;
            bin.kind = NodeKind::BinaryOp;
            bin.op = op;
            bin.children = {lhs, rhs};
            lhs = finish(std::move(bin), first_tok);
        }
        return lhs;
    }

    NodeId parse_unary() {
        const Token &t = peek();
        if (t.kind == TokenKind::Punct &&
            (t.text == "-" || t.text == "+" || t.text == "!" || t.text == "~" || t.text == "*" ||
             t.text == "&")) {
            size_t first = pos_;
            std::string op = advance().text;
            NodeId operand = parse_unary();
            AstNode un;
            un.kind = NodeKind::UnaryOp;
            un.op = op;
            un.children = {operand};
            return finish(std::move(un), first);
        }
        return parse_postfix();
    }

    NodeId parse_postfix() {
        NodeId base = parse_primary();
        while (true) {
            const Token &t = peek();
            if (t.is_punct("[")) {
                size_t first_tok = node_first_token(base);
                advance();
                NodeId index = parse_expr();
                expect_punct("]");
                AstNode idx;
                idx.kind = NodeKind::BinaryOp;
                idx.op = "[]";
                idx.children = {base, index};
                base = finish(std::move(idx), first_tok);
            } else if (t.is_punct(".") || t.is_punct("->")) {
                size_t first_tok = node_first_token(base);
                std::string op = advance().text;
                const Token &member = expect_identifier("a member name");
                AstNode acc;
                acc.kind = NodeKind::MemberAccess;
                acc.op = op;
                acc.name = member.text;
                acc.children = {base};
                base = finish(std::move(acc), first_tok);
            } else if (t.is_punct("(")) {
                throw SyntaxError(t.loc, "only named functions can be called");
            } else {
                break;
            }
        }
        return base;
    }

    NodeId parse_primary() {
        const Token &t = peek();
        if (t.kind == TokenKind::Identifier) {
            if (peek(1).is_punct("("))
                return parse_call();
            size_t first = pos_;
            advance();
            AstNode ident;
            ident.kind = NodeKind::Identifier;
            ident.name = t.text;
            return finish(std::move(ident), first);
        }
        if (t.kind == TokenKind::Number || t.kind == TokenKind::CharLit ||
            t.kind == TokenKind::StringLit) {
            size_t first = pos_;
            advance();
            AstNode lit;
            lit.kind = NodeKind::Literal;
            return finish(std::move(lit), first);
        }
        if (t.is_punct("(")) {
            advance();
            NodeId inner = parse_expr();
            expect_punct(")");
            return inner;
        }
        throw SyntaxError(t.loc, "expected an expression, got '" + t.text + "'");
    }

    NodeId parse_call() {
        size_t first = pos_;
        const Token &callee = expect_identifier("a function name");
        expect_punct("(");
        AstNode call;
        call.kind = NodeKind::Call;
        call.name = callee.text;
        if (!peek().is_punct(")")) {
            while (true) {
                size_t arg_first = pos_;
                NodeId expr = parse_expr();
                AstNode arg;
                arg.kind = NodeKind::Arg;
                arg.children = {expr};
                call.children.push_back(finish(std::move(arg), arg_first));
                if (!peek().is_punct(","))
                    break;
                advance();
            }
        }
        expect_punct(")");
        return finish(std::move(call), first);
    }

    /// Token index where an already-built node starts (for left-recursive
    /// span extension).
    size_t node_first_token(NodeId id) const {
        const SourceLoc &loc = nodes_[id].loc;
        // Nodes are built from contiguous token runs, so a linear scan from
        // the current position backwards finds the start token.
        for (size_t i = pos_; i-- > 0;) {
            if (tokens_[i].loc.line == loc.line && tokens_[i].loc.column == loc.column)
                return i;
        }
        return 0;
    }
};

} // namespace

ParseResult parse_translation_unit(std::string_view source, const std::string &filename,
                                   NodeTable &nodes) {
    return Parser(source, filename, nodes).run();
}

ForParts for_parts(const NodeTable &nodes, NodeId for_node) {
    const AstNode &n = nodes[for_node];
    assert(n.kind == NodeKind::For);
    ForParts parts;
    size_t i = 0;
    for (char c : n.op) {
        if (c == 'i')
            parts.init = n.children[i++];
        else if (c == 'c')
            parts.cond = n.children[i++];
        else if (c == 's')
            parts.step = n.children[i++];
    }
    parts.body = n.children.back();
    return parts;
}

} // namespace fpm
