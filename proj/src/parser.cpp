#include "oruga/dsl.hpp"

#include <set>
#include <sstream>

namespace oruga {

// --- Document ---

const TypeSystem* Document::type_system(const std::string& name) const {
  auto it = current_.find(name);
  return it == current_.end() ? nullptr : &it->second;
}

const ConSpec* Document::con_spec(const std::string& name) const {
  for (const auto& d : decls_) {
    if (const auto* cs = std::get_if<ConSpec>(&d); cs && cs->name() == name) return cs;
  }
  return nullptr;
}

const ConstructionDecl* Document::construction(const std::string& name) const {
  for (const auto& d : decls_) {
    if (const auto* c = std::get_if<ConstructionDecl>(&d); c && c->name == name) return c;
  }
  return nullptr;
}

const TransferSchema* Document::schema(const std::string& name) const {
  for (const auto& d : decls_) {
    if (const auto* s = std::get_if<TransferSchema>(&d); s && s->name == name) return s;
  }
  return nullptr;
}

const TypeSystem& Document::types_of(const ConSpec& cs) const {
  const auto* ts = type_system(cs.type_system_name());
  if (!ts) {
    throw Error(ErrorKind::UnknownTypeSystem,
                "type system '" + cs.type_system_name() + "' is not loaded");
  }
  return *ts;
}

std::vector<TransferSchema> Document::schemas_between(const std::string& source,
                                                      const std::string& target) const {
  std::vector<TransferSchema> out;
  for (const auto& d : decls_) {
    if (const auto* s = std::get_if<TransferSchema>(&d);
        s && s->source_space == source && s->target_space == target) {
      out.push_back(*s);
    }
  }
  return out;
}

void Document::add(Declaration decl, SourceSpan span) {
  if (const auto* ts = std::get_if<TypeSystem>(&decl)) current_[ts->name()] = *ts;
  decls_.push_back(std::move(decl));
  spans_.push_back(std::move(span));
}

void Document::set_type_system(TypeSystem ts) {
  std::string name = ts.name();
  current_[name] = std::move(ts);
}

// --- Parser ---

namespace {

std::string describe(LexemeKind kind) {
  switch (kind) {
  case LexemeKind::Keyword: return "keyword";
  case LexemeKind::Ident: return "identifier";
  case LexemeKind::Equals: return "'='";
  case LexemeKind::Comma: return "','";
  case LexemeKind::Colon: return "':'";
  case LexemeKind::DoubleColon: return "'::'";
  case LexemeKind::Less: return "'<'";
  case LexemeKind::LeftArrow: return "'<-'";
  case LexemeKind::RightArrow: return "'->'";
  case LexemeKind::LBracket: return "'['";
  case LexemeKind::RBracket: return "']'";
  case LexemeKind::LParen: return "'('";
  case LexemeKind::RParen: return "')'";
  case LexemeKind::Underscore: return "'_'";
  }
  return "?";
}

ErrorKind error_for(ViolationKind kind) {
  switch (kind) {
  case ViolationKind::Arity: return ErrorKind::ArityMismatch;
  case ViolationKind::UnknownConstructor: return ErrorKind::UnknownConstructor;
  case ViolationKind::UnknownType: return ErrorKind::UnknownType;
  case ViolationKind::InconsistentTokenType: return ErrorKind::ConflictingTokenType;
  default: return ErrorKind::InvalidConstruction;
  }
}

class Parser {
public:
  Parser(std::vector<Lexeme> lexemes, Document& doc, std::string file)
      : lx_(std::move(lexemes)), doc_(doc), file_(std::move(file)) {
    for (std::size_t i = 0; i + 1 < lx_.size(); ++i) {
      if (lx_[i].kind == LexemeKind::Keyword && lx_[i + 1].kind == LexemeKind::Ident) {
        declared_at_.emplace(lx_[i].text + " " + lx_[i + 1].text, i);
      }
    }
  }

  void parse_all() {
    while (pos_ < lx_.size()) parse_declaration();
  }

  Construction parse_lone_term(const std::string& con_spec) {
    const ConSpec* cs = doc_.con_spec(con_spec);
    if (!cs) throw Error(ErrorKind::UnknownSpace, "conSpec '" + con_spec + "' is not declared");
    TermScope scope;
    Construction c = parse_cterm(*cs, cs->type_system_name(), scope);
    if (pos_ < lx_.size()) syntax_error("end of input");
    check_construction(c, *cs, scope, here());
    return c;
  }

private:
  struct TermScope {
    std::map<std::string, TypeName> bound;
    std::map<std::string, SourceSpan> spans;
  };

  // -- cursor helpers --

  SourceSpan here() const {
    if (pos_ < lx_.size()) return lx_[pos_].span;
    SourceSpan s;
    s.file = file_;
    if (!lx_.empty()) {
      s = lx_.back().span;
      s.column_start = s.column_end = s.column_end + 1;
      s.offset_start = s.offset_end;
    }
    return s;
  }

  bool at(LexemeKind kind, std::string_view text = {}) const {
    return pos_ < lx_.size() && lx_[pos_].kind == kind &&
           (text.empty() || lx_[pos_].text == text);
  }

  [[noreturn]] void syntax_error(const std::string& expected) const {
    std::string found = pos_ < lx_.size()
                            ? describe(lx_[pos_].kind) + " '" + lx_[pos_].text + "'"
                            : std::string("end of input");
    throw Error(ErrorKind::SyntaxError, "expected " + expected + ", found " + found, here());
  }

  const Lexeme& expect(LexemeKind kind, const std::string& what) {
    if (!at(kind)) syntax_error(what);
    return lx_[pos_++];
  }

  const Lexeme& expect_keyword(std::string_view word) {
    if (!at(LexemeKind::Keyword, word)) syntax_error("'" + std::string(word) + "'");
    return lx_[pos_++];
  }

  bool accept(LexemeKind kind) {
    if (!at(kind)) return false;
    ++pos_;
    return true;
  }

  bool declared_later(const std::string& keyword, const std::string& name) const {
    auto it = declared_at_.find(keyword + " " + name);
    return it != declared_at_.end() && it->second >= pos_;
  }

  [[noreturn]] void missing(const std::string& keyword, const Lexeme& ref,
                            ErrorKind otherwise) const {
    if (declared_later(keyword, ref.text)) {
      throw Error(ErrorKind::ForwardReference,
                  keyword + " '" + ref.text + "' is used before its declaration", ref.span);
    }
    throw Error(otherwise, keyword + " '" + ref.text + "' is not declared", ref.span);
  }

  SourceSpan span_from(std::size_t first) const {
    SourceSpan s = lx_[first].span;
    const SourceSpan& last = lx_[pos_ ? pos_ - 1 : 0].span;
    s.offset_end = last.offset_end;
    if (last.line == s.line) s.column_end = last.column_end;
    return s;
  }

  // -- declarations --

  void parse_declaration() {
    std::size_t first = pos_;
    if (!at(LexemeKind::Keyword)) {
      syntax_error("a declaration (typeSystem, conSpec, construction or tSchema)");
    }
    const std::string& kw = lx_[pos_].text;
    SourceSpan header = lx_[pos_].span;
    if (pos_ + 1 < lx_.size()) header = lx_[pos_ + 1].span;
    try {
      if (kw == "typeSystem") parse_type_system(first);
      else if (kw == "conSpec") parse_con_spec(first);
      else if (kw == "construction") parse_construction(first);
      else if (kw == "tSchema") parse_schema(first);
      else syntax_error("a declaration (typeSystem, conSpec, construction or tSchema)");
    } catch (const Error& e) {
      throw e.with_span(header);
    }
  }

  void check_unique(bool exists, const std::string& kind, const Lexeme& name) {
    if (exists) {
      throw Error(ErrorKind::DuplicateDeclaration,
                  kind + " '" + name.text + "' is declared twice", name.span);
    }
  }

  void parse_type_system(std::size_t first) {
    expect_keyword("typeSystem");
    const Lexeme& name = expect(LexemeKind::Ident, "type system name");
    check_unique(doc_.type_system(name.text) != nullptr, "typeSystem", name);
    expect(LexemeKind::Equals, "'='");
    expect_keyword("types");
    std::vector<TypeEntry> entries;
    do {
      bool open = false;
      if (accept(LexemeKind::Underscore)) {
        expect(LexemeKind::Colon, "':' after '_'");
        open = true;
      }
      entries.push_back({expect(LexemeKind::Ident, "type name").text, open});
    } while (accept(LexemeKind::Comma));
    std::vector<TypePair> order;
    if (at(LexemeKind::Keyword, "order")) {
      ++pos_;
      do {
        const auto& sub = expect(LexemeKind::Ident, "type name").text;
        expect(LexemeKind::Less, "'<'");
        const auto& super = expect(LexemeKind::Ident, "type name").text;
        order.emplace_back(sub, super);
      } while (accept(LexemeKind::Comma));
    }
    try {
      doc_.add(build_type_system(name.text, entries, order), span_from(first));
    } catch (const Error& e) {
      throw e.with_span(name.span);
    }
  }

  void parse_con_spec(std::size_t first) {
    expect_keyword("conSpec");
    const Lexeme& name = expect(LexemeKind::Ident, "conSpec name");
    check_unique(doc_.con_spec(name.text) != nullptr, "conSpec", name);
    expect(LexemeKind::Colon, "':'");
    const Lexeme& ts_name = expect(LexemeKind::Ident, "type system name");
    const TypeSystem* ts = doc_.type_system(ts_name.text);
    if (!ts) missing("typeSystem", ts_name, ErrorKind::UnknownTypeSystem);
    expect(LexemeKind::Equals, "'='");
    std::vector<std::pair<std::string, ConstructorSig>> decls;
    do {
      const Lexeme& ctor = expect(LexemeKind::Ident, "constructor name");
      expect(LexemeKind::Colon, "':'");
      expect(LexemeKind::LBracket, "'['");
      ConstructorSig sig;
      if (!at(LexemeKind::RBracket)) {
        do {
          const Lexeme& t = expect(LexemeKind::Ident, "input type");
          if (!ts->knows(t.text)) {
            throw Error(ErrorKind::UnknownType, "type '" + t.text + "' is not in " + ts->name(),
                        t.span);
          }
          sig.inputs.push_back(t.text);
        } while (accept(LexemeKind::Comma));
      }
      expect(LexemeKind::RBracket, "']'");
      expect(LexemeKind::RightArrow, "'->'");
      const Lexeme& out = expect(LexemeKind::Ident, "output type");
      if (!ts->knows(out.text)) {
        throw Error(ErrorKind::UnknownType, "type '" + out.text + "' is not in " + ts->name(),
                    out.span);
      }
      sig.output = out.text;
      if (sig.inputs.empty()) {
        throw Error(ErrorKind::EmptyInputs, "constructor '" + ctor.text + "' has no inputs",
                    ctor.span);
      }
      for (const auto& [other, _] : decls) {
        if (other == ctor.text) {
          throw Error(ErrorKind::DuplicateConstructor,
                      "constructor '" + ctor.text + "' declared twice", ctor.span);
        }
      }
      decls.emplace_back(ctor.text, std::move(sig));
    } while (accept(LexemeKind::Comma));
    doc_.add(build_con_spec(name.text, *ts, decls), span_from(first));
  }

  const ConSpec& lookup_con_spec(const Lexeme& ref) {
    const ConSpec* cs = doc_.con_spec(ref.text);
    if (!cs) missing("conSpec", ref, ErrorKind::UnknownSpace);
    return *cs;
  }

  void parse_construction(std::size_t first) {
    expect_keyword("construction");
    const Lexeme& name = expect(LexemeKind::Ident, "construction name");
    check_unique(doc_.construction(name.text) != nullptr, "construction", name);
    expect(LexemeKind::Colon, "':'");
    const ConSpec& cs = lookup_con_spec(expect(LexemeKind::Ident, "conSpec name"));
    expect(LexemeKind::Equals, "'='");
    TermScope scope;
    Construction body = parse_cterm(cs, cs.type_system_name(), scope);
    check_construction(body, cs, scope, name.span);
    std::string cs_name = cs.name();
    doc_.add(ConstructionDecl{name.text, cs_name, std::move(body)}, span_from(first));
  }

  void check_construction(const Construction& c, const ConSpec& cs, const TermScope& scope,
                          const SourceSpan& fallback) {
    auto report = validate(c, cs, doc_.types_of(cs));
    if (report.ok()) return;
    const auto& v = report.violations.front();
    auto it = scope.spans.find(v.token_id);
    throw Error(error_for(v.kind), report.summary(),
                it == scope.spans.end() ? fallback : it->second);
  }

  Construction parse_cterm(const ConSpec& cs, const std::string& ts_name, TermScope& scope) {
    const Lexeme& id_lex = expect(LexemeKind::Ident, "token id");
    const std::string& id = id_lex.text;
    std::optional<TypeName> type;
    if (accept(LexemeKind::Colon)) {
      const Lexeme& type_lex = expect(LexemeKind::Ident, "type");
      type = type_lex.text;
      if (accept(LexemeKind::Colon)) {
        const Lexeme& family = expect(LexemeKind::Ident, "open family type");
        try {
          doc_.set_type_system(
              doc_.type_system(ts_name)->register_dynamic_type(type_lex.text, family.text));
        } catch (const Error& e) {
          throw e.with_span(family.span);
        }
      } else if (!doc_.type_system(ts_name)->knows(*type)) {
        throw Error(ErrorKind::UnknownType,
                    "type '" + *type + "' is not in " + ts_name, type_lex.span);
      }
    }
    bool constructed = at(LexemeKind::LeftArrow);

    if (auto prior = scope.bound.find(id); prior != scope.bound.end()) {
      if (type && *type != prior->second) {
        throw Error(ErrorKind::ConflictingTokenType,
                    "token '" + id + "' was typed '" + prior->second + "', not '" + *type + "'",
                    id_lex.span);
      }
      if (constructed) {
        throw Error(ErrorKind::SyntaxError, "token '" + id + "' is already bound in this term",
                    id_lex.span);
      }
      return Construction::reference(id);
    }
    if (!type) {
      if (constructed) {
        throw Error(ErrorKind::SyntaxError,
                    "constructed token '" + id + "' needs a type annotation", id_lex.span);
      }
      return Construction::reference(id);
    }
    scope.bound.emplace(id, *type);
    scope.spans.emplace(id, id_lex.span);
    if (!constructed) return Construction::source({id, *type});

    ++pos_;
    const Lexeme& ctor = expect(LexemeKind::Ident, "constructor name");
    if (!cs.has(ctor.text)) {
      throw Error(ErrorKind::UnknownConstructor,
                  "constructor '" + ctor.text + "' is not in " + cs.name(), ctor.span);
    }
    expect(LexemeKind::LBracket, "'['");
    std::vector<Construction> inputs;
    do {
      inputs.push_back(parse_cterm(cs, ts_name, scope));
    } while (accept(LexemeKind::Comma));
    expect(LexemeKind::RBracket, "']'");
    const auto& sig = cs.signature_of(ctor.text);
    if (inputs.size() != sig.arity()) {
      throw Error(ErrorKind::ArityMismatch,
                  "'" + ctor.text + "' takes " + std::to_string(sig.arity()) + " inputs, got " +
                      std::to_string(inputs.size()),
                  ctor.span);
    }
    return Construction::apply({id, *type}, ctor.text, std::move(inputs));
  }

  std::vector<std::string> parse_ann_list(const std::map<std::string, TypeName>& pattern) {
    std::vector<std::string> ids;
    expect(LexemeKind::LBracket, "'['");
    if (!at(LexemeKind::RBracket)) {
      do {
        const Lexeme& id = expect(LexemeKind::Ident, "token id");
        if (accept(LexemeKind::Colon)) {
          const Lexeme& type = expect(LexemeKind::Ident, "type");
          if (accept(LexemeKind::Colon)) expect(LexemeKind::Ident, "open family type");
          auto it = pattern.find(id.text);
          if (it != pattern.end() && it->second != type.text) {
            throw Error(ErrorKind::ConflictingTokenType,
                        "token '" + id.text + "' has type '" + it->second +
                            "' in its pattern, not '" + type.text + "'",
                        type.span);
          }
        }
        ids.push_back(id.text);
      } while (accept(LexemeKind::Comma));
    }
    expect(LexemeKind::RBracket, "']'");
    return ids;
  }

  RelConstraint parse_rel(const std::map<std::string, TypeName>& source,
                          const std::map<std::string, TypeName>& target) {
    RelConstraint rel;
    expect(LexemeKind::LParen, "'('");
    rel.source_tokens = parse_ann_list(source);
    expect(LexemeKind::Comma, "','");
    rel.target_tokens = parse_ann_list(target);
    expect(LexemeKind::RParen, "')'");
    expect(LexemeKind::DoubleColon, "'::'");
    rel.relation = expect(LexemeKind::Ident, "relation name").text;
    return rel;
  }

  void parse_schema(std::size_t first) {
    expect_keyword("tSchema");
    const Lexeme& name = expect(LexemeKind::Ident, "schema name");
    check_unique(doc_.schema(name.text) != nullptr, "tSchema", name);
    expect(LexemeKind::Colon, "':'");
    expect(LexemeKind::LParen, "'('");
    const ConSpec& source = lookup_con_spec(expect(LexemeKind::Ident, "source conSpec name"));
    expect(LexemeKind::Comma, "','");
    const ConSpec& target = lookup_con_spec(expect(LexemeKind::Ident, "target conSpec name"));
    expect(LexemeKind::RParen, "')'");
    expect(LexemeKind::Equals, "'='");

    expect_keyword("source");
    TermScope source_scope;
    Pattern source_pattern = parse_cterm(source, source.type_system_name(), source_scope);
    expect_keyword("target");
    TermScope target_scope;
    Pattern target_pattern = parse_cterm(target, target.type_system_name(), target_scope);

    std::vector<RelConstraint> antecedents;
    if (at(LexemeKind::Keyword, "antecedent")) {
      ++pos_;
      do {
        antecedents.push_back(parse_rel(source_scope.bound, target_scope.bound));
      } while (accept(LexemeKind::Comma));
    }
    expect_keyword("consequent");
    RelConstraint consequent = parse_rel(source_scope.bound, target_scope.bound);

    SpaceRef src{source, doc_.types_of(source)};
    SpaceRef tgt{target, doc_.types_of(target)};
    doc_.add(build_schema(name.text, src, tgt, std::move(source_pattern),
                          std::move(target_pattern), std::move(antecedents),
                          std::move(consequent)),
             span_from(first));
  }

  std::vector<Lexeme> lx_;
  std::size_t pos_ = 0;
  Document& doc_;
  std::string file_;
  std::map<std::string, std::size_t> declared_at_;
};

} // namespace

Document parse_documents(const std::vector<SourceFile>& files) {
  Document doc;
  for (const auto& f : files) {
    Parser parser(tokenize(f.text, f.name), doc, f.name);
    parser.parse_all();
  }
  return doc;
}

Document parse_document(std::string_view text, const std::string& file) {
  return parse_documents({{file, std::string(text)}});
}

Construction parse_construction_term(std::string_view text, Document& doc,
                                     const std::string& con_spec_name) {
  Parser parser(tokenize(text), doc, "");
  return parser.parse_lone_term(con_spec_name);
}

} // namespace oruga
