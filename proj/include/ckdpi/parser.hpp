// ckdpi/parser.hpp - recursive-descent parser for a Java-like subset.
//
// Recognized structure: class declarations (optional "extends Name"), method
// and constructor declarations, field and local variable declarations, and
// method invocations inside bodies. Everything else inside a class body or
// method body is treated as noise and skipped to the next ";" or balanced
// "}" without aborting the parse. Errors at class/method declaration level
// are fatal and carry line/column.
//
// Receiver resolution inside bodies:
//   name(args)        -> self
//   this.name(args)   -> self
//   super.name(args)  -> the declaring class's superclass (dropped if none)
//   var.name(args)    -> declared type of var (param, local or field),
//                        else the textual receiver as an external type
//   Type.name(args)   -> Type
// Chained calls a.b().c() record only the first resolvable hop; the call to
// c has no resolvable receiver and is dropped. "new Type(args)" expressions
// are not recorded as invocations. this(args)/super(args) constructor
// delegations are recorded as calls to the constructor method.
#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "ckdpi/class_model.hpp"
#include "ckdpi/lexer.hpp"

namespace ckdpi {

/// Parse result for a single source file.
struct SourceUnit {
    std::string path;
    std::vector<ClassDecl> declared_classes;
};

namespace detail {

inline bool is_modifier(const Token& t) {
    if (t.kind != TokenKind::keyword) return false;
    static const std::unordered_set<std::string_view> mods = {
        "public", "private",   "protected", "static",    "final",   "abstract",
        "native", "transient", "volatile",  "strictfp",  "synchronized",
    };
    return mods.count(t.text) > 0;
}

// A token usable in type position: an identifier or a primitive keyword.
inline bool is_type_token(const Token& t) {
    if (t.kind == TokenKind::identifier) return true;
    if (t.kind != TokenKind::keyword) return false;
    static const std::unordered_set<std::string_view> prims = {
        "boolean", "byte", "char", "double", "float", "int", "long", "short", "void",
    };
    return prims.count(t.text) > 0;
}

inline bool is_decision_keyword(const Token& t) {
    return t.kind == TokenKind::keyword &&
           (t.text == "if" || t.text == "for" || t.text == "while" || t.text == "case" ||
            t.text == "catch");
}

class UnitParser {
public:
    UnitParser(const std::vector<Token>& tokens, std::string path)
        : toks_(tokens), path_(std::move(path)) {}

    SourceUnit run() {
        SourceUnit unit;
        unit.path = path_;
        while (!at_end()) {
            if (cur().is_keyword("class")) {
                unit.declared_classes.push_back(parse_class());
            } else if (cur().is_keyword("interface") || cur().is_keyword("enum")) {
                skip_statement();   // not modelled; swallow the whole body
            } else {
                ++i_;               // package/import/modifier noise
            }
        }
        for (std::size_t a = 0; a < unit.declared_classes.size(); ++a)
            for (std::size_t b = a + 1; b < unit.declared_classes.size(); ++b)
                if (unit.declared_classes[a].name == unit.declared_classes[b].name)
                    throw ParseError(path_, 0, 0,
                                     "class '" + unit.declared_classes[a].name +
                                         "' declared twice in this file");
        return unit;
    }

private:
    struct PendingMethod {
        MethodDecl decl;                              // name/arity filled in
        std::map<std::string, std::string> params;    // name -> type
        std::size_t body_begin = 0, body_end = 0;     // token range, may be empty
    };

    const std::vector<Token>& toks_;
    std::string path_;
    std::size_t i_ = 0;

    const Token& cur() const { return toks_[i_]; }
    const Token& peek(std::size_t k) const {
        std::size_t j = i_ + k;
        return j < toks_.size() ? toks_[j] : toks_.back();
    }
    bool at_end() const { return cur().kind == TokenKind::end_of_input; }

    [[noreturn]] void fail(const Token& t, const std::string& message) const {
        throw ParseError(path_, t.line, t.column, message);
    }

    // Panic-mode recovery: consume tokens until a ";" at the current nesting
    // level or one balanced "{...}" group; a bare "}" (the enclosing scope's
    // close) is left in place.
    void skip_statement() {
        while (!at_end()) {
            if (cur().is_punct(";")) { ++i_; return; }
            if (cur().is_punct("{")) { skip_balanced_braces(); return; }
            if (cur().is_punct("}")) return;
            ++i_;
        }
    }

    void skip_balanced_braces() {
        int depth = 0;
        while (!at_end()) {
            if (cur().is_punct("{")) ++depth;
            if (cur().is_punct("}")) {
                --depth;
                ++i_;
                if (depth == 0) return;
                continue;
            }
            ++i_;
        }
    }

    ClassDecl parse_class() {
        ++i_;   // 'class'
        if (cur().kind != TokenKind::identifier)
            fail(cur(), "expected class name after 'class'");
        ClassDecl decl;
        decl.name = cur().text;
        ++i_;
        if (cur().is_keyword("extends")) {
            ++i_;
            if (cur().kind != TokenKind::identifier)
                fail(cur(), "expected superclass name after 'extends'");
            decl.superclass = cur().text;
            ++i_;
        }
        while (!at_end() && !cur().is_punct("{"))
            ++i_;   // implements lists and similar header noise
        if (at_end())
            fail(cur(), "expected '{' to open body of class '" + decl.name + "'");
        ++i_;   // '{'

        std::map<std::string, std::string> fields;
        std::vector<PendingMethod> pending;

        while (!at_end() && !cur().is_punct("}"))
            parse_member(decl, fields, pending);
        if (at_end())
            fail(cur(), "expected '}' to close body of class '" + decl.name + "'");
        ++i_;   // '}'

        // Bodies are analyzed only after the whole class has been scanned so
        // that fields declared below a method still bind inside it.
        for (auto& pm : pending) {
            analyze_body(pm, fields, decl);
            attach_method(decl, std::move(pm.decl));
        }
        return decl;
    }

    void parse_member(const ClassDecl& decl, std::map<std::string, std::string>& fields,
                      std::vector<PendingMethod>& pending) {
        while (is_modifier(cur())) ++i_;
        if (cur().is_punct(";")) { ++i_; return; }
        if (cur().is_keyword("class") || cur().is_keyword("interface") ||
            cur().is_keyword("enum")) {
            skip_statement();   // nested type: out of scope, treated as noise
            return;
        }
        // constructor: ClassName (
        if (cur().kind == TokenKind::identifier && cur().text == decl.name &&
            peek(1).is_punct("(")) {
            pending.push_back(parse_callable(decl.name));
            return;
        }
        // method: Type name (
        if (is_type_token(cur()) && peek(1).kind == TokenKind::identifier &&
            peek(2).is_punct("(")) {
            ++i_;   // return type
            pending.push_back(parse_callable(cur().text));
            return;
        }
        // field: Type name followed by '=', ';' or ','
        if (is_type_token(cur()) && !cur().is_keyword("void") &&
            peek(1).kind == TokenKind::identifier &&
            (peek(2).is_punct("=") || peek(2).is_punct(";") || peek(2).is_punct(","))) {
            parse_field(fields);
            return;
        }
        skip_statement();
    }

    // Parses "name ( params ) [throws ...] { body }" starting at the name.
    PendingMethod parse_callable(const std::string& name) {
        PendingMethod pm;
        pm.decl.name = name;
        ++i_;   // name
        if (!cur().is_punct("("))
            fail(cur(), "expected '(' after method name '" + name + "'");
        ++i_;
        if (!cur().is_punct(")")) {
            while (true) {
                if (!is_type_token(cur()) || cur().is_keyword("void"))
                    fail(cur(), "expected parameter type in declaration of '" + name + "'");
                std::string type = cur().text;
                ++i_;
                if (cur().kind != TokenKind::identifier)
                    fail(cur(), "expected parameter name in declaration of '" + name + "'");
                pm.params[cur().text] = type;
                ++i_;
                ++pm.decl.arity;
                if (cur().is_punct(",")) { ++i_; continue; }
                break;
            }
        }
        if (!cur().is_punct(")"))
            fail(cur(), "expected ')' after parameters of '" + name + "'");
        ++i_;
        if (cur().is_keyword("throws"))
            while (!at_end() && !cur().is_punct("{") && !cur().is_punct(";"))
                ++i_;
        if (cur().is_punct(";")) {   // abstract/native: no body
            ++i_;
            return pm;
        }
        if (!cur().is_punct("{"))
            fail(cur(), "expected body of method '" + name + "'");
        std::size_t open = i_;
        skip_balanced_braces();
        pm.body_begin = open + 1;
        pm.body_end = i_ > 0 ? i_ - 1 : 0;   // exclude the closing '}'
        return pm;
    }

    void parse_field(std::map<std::string, std::string>& fields) {
        std::string type = cur().text;
        ++i_;
        fields[cur().text] = type;
        ++i_;
        // remaining declarators and initializers up to ';'
        int depth = 0;
        while (!at_end()) {
            if (cur().is_punct("(") || cur().is_punct("{") || cur().is_punct("[")) ++depth;
            if (cur().is_punct(")") || cur().is_punct("}") || cur().is_punct("]")) --depth;
            if (depth == 0 && cur().is_punct(",") && peek(1).kind == TokenKind::identifier) {
                fields[peek(1).text] = type;
            }
            if (depth <= 0 && cur().is_punct(";")) { ++i_; return; }
            ++i_;
        }
    }

    // Counts decision points and records invocations within one body range.
    void analyze_body(PendingMethod& pm, const std::map<std::string, std::string>& fields,
                      const ClassDecl& decl) {
        std::map<std::string, std::string> scope = fields;
        for (const auto& [name, type] : pm.params) scope[name] = type;

        for (std::size_t j = pm.body_begin; j < pm.body_end; ++j) {
            const Token& t = toks_[j];
            if (is_decision_keyword(t) || t.is_punct("&&") || t.is_punct("||")) {
                ++pm.decl.decision_points;
                continue;
            }
            // local declaration: Type name followed by '=', ';', ',' or ')'
            if (is_type_token(t) && !t.is_keyword("void") &&
                toks_[j + 1].kind == TokenKind::identifier && j + 2 < pm.body_end) {
                const Token& after = toks_[j + 2];
                if (after.is_punct("=") || after.is_punct(";") || after.is_punct(",") ||
                    after.is_punct(")"))
                    scope[toks_[j + 1].text] = t.text;
            }
            // constructor delegation: this(...) / super(...)
            if ((t.is_keyword("this") || t.is_keyword("super")) && toks_[j + 1].is_punct("(")) {
                unsigned arity = count_arguments(j + 1);
                if (t.is_keyword("this"))
                    pm.decl.invocations.insert(
                        {std::string(kSelfReceiver), decl.name, arity});
                else if (decl.superclass)
                    pm.decl.invocations.insert({*decl.superclass, *decl.superclass, arity});
                continue;
            }
            if (t.kind != TokenKind::identifier || !toks_[j + 1].is_punct("("))
                continue;
            const Token& prev = toks_[j - 1];
            std::string receiver;
            bool drop = false;
            if (prev.is_punct(".")) {
                const Token& q = toks_[j - 2];
                if (q.is_keyword("this")) {
                    receiver = kSelfReceiver;
                } else if (q.is_keyword("super")) {
                    if (decl.superclass) receiver = *decl.superclass;
                    else drop = true;
                } else if (q.kind == TokenKind::identifier) {
                    auto it = scope.find(q.text);
                    receiver = it != scope.end() ? it->second : q.text;
                    if (is_self_receiver(receiver)) receiver = kSelfReceiver;
                } else {
                    drop = true;   // chained call or literal receiver: unresolvable
                }
            } else if (prev.is_keyword("new")) {
                drop = true;       // object creation, not a message to a receiver
            } else {
                receiver = kSelfReceiver;
            }
            if (!drop)
                pm.decl.invocations.insert({std::move(receiver), t.text,
                                            count_arguments(j + 1)});
        }
    }

    // Argument count of the call whose '(' sits at `open`: top-level commas + 1.
    unsigned count_arguments(std::size_t open) const {
        std::size_t j = open + 1;
        if (toks_[j].is_punct(")")) return 0;
        unsigned args = 1;
        int depth = 0;
        for (; j < toks_.size() && toks_[j].kind != TokenKind::end_of_input; ++j) {
            const Token& t = toks_[j];
            if (t.is_punct("(")) ++depth;
            else if (t.is_punct(")")) {
                if (depth == 0) break;
                --depth;
            } else if (t.is_punct(",") && depth == 0) {
                ++args;
            }
        }
        return args;
    }

    // Methods with the same (name, arity) collapse into one declaration:
    // invocation sets union, decision points add up.
    static void attach_method(ClassDecl& decl, MethodDecl&& m) {
        for (auto& existing : decl.methods) {
            if (existing.name == m.name && existing.arity == m.arity) {
                existing.decision_points += m.decision_points;
                existing.invocations.insert(m.invocations.begin(), m.invocations.end());
                return;
            }
        }
        decl.methods.push_back(std::move(m));
    }
};

} // namespace detail

/// Parses one tokenized file. Body-level noise never aborts the parse;
/// malformed class or method declarations throw ParseError.
inline SourceUnit parse_unit(const std::vector<Token>& tokens, const std::string& path) {
    if (tokens.empty() || tokens.back().kind != TokenKind::end_of_input)
        throw ParseError(path, 0, 0, "token stream must end with end-of-input");
    return detail::UnitParser(tokens, path).run();
}

/// Convenience: tokenize + parse.
inline SourceUnit parse_source(std::string_view source, const std::string& path) {
    return parse_unit(tokenize(source, path), path);
}

/// Merges parsed units into one resolved model. Superclass and receiver
/// names are resolved against the union of declared classes; unresolved
/// names are recorded as externals. The result always passes validate().
/// Throws ModelError on duplicate class names (naming both files) or
/// inheritance cycles.
inline ClassModel build_model(const std::vector<SourceUnit>& units) {
    std::map<std::string, ClassDecl> classes;
    std::map<std::string, std::string> declared_in;
    for (const auto& unit : units) {
        for (const auto& decl : unit.declared_classes) {
            auto [it, inserted] = classes.emplace(decl.name, decl);
            if (!inserted) {
                std::string a = declared_in[decl.name], b = unit.path;
                if (b < a) std::swap(a, b);
                throw ModelError("duplicate class '" + decl.name + "' declared in " + a +
                                 " and " + b);
            }
            declared_in[decl.name] = unit.path;
        }
    }
    return detail::finalize_model(std::move(classes));
}

} // namespace ckdpi
