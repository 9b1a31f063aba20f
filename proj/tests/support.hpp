#ifndef ORUGA_TESTS_SUPPORT_HPP
#define ORUGA_TESTS_SUPPORT_HPP

#include "oruga/dsl.hpp"
#include "oruga/error.hpp"
#include "oruga/transfer.hpp"

#include <doctest.h>

#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

namespace oruga::testing {

// The kind of the Error thrown by `fn`; fails the test if nothing is thrown.
inline ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::UnknownName;
}

inline std::string corpus_path(const std::string& file) {
  return std::string(ORUGA_CORPUS_DIR) + "/" + file;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

inline SourceFile corpus_file(const std::string& file) {
  return {corpus_path(file), read_file(corpus_path(file))};
}

inline Document load_corpus(const std::vector<std::string>& files) {
  std::vector<SourceFile> sources;
  for (const auto& f : files) sources.push_back(corpus_file(f));
  return parse_documents(sources);
}

// The arithmetic space, the dot-diagram space and the schemas between them.
inline Document arith_document() {
  return load_corpus({"dot_diagrams.oruga", "arith.oruga", "arith_transfer.oruga"});
}

inline Document gauss_document() {
  return load_corpus({"dot_diagrams.oruga", "gauss.oruga"});
}

// Everything needed to run one transfer query against a loaded document.
struct Query {
  const Document& doc;
  std::string construction;
  std::string target_space = "dotDiagrams";

  const Construction& source() const { return doc.construction(construction)->body; }
  const std::string& source_space() const { return doc.construction(construction)->con_spec; }
  const ConSpec& source_cs() const { return *doc.con_spec(source_space()); }
  const ConSpec& target_cs() const { return *doc.con_spec(target_space); }
  TransferContext context() const {
    return {source(), source_cs(), doc.types_of(source_cs()), target_cs(),
            doc.types_of(target_cs())};
  }
  std::vector<TransferSchema> schemas(const std::vector<std::string>& names) const {
    std::vector<TransferSchema> out;
    for (const auto& n : names) out.push_back(*doc.schema(n));
    return out;
  }
  std::vector<TransferSchema> all_schemas() const {
    return doc.schemas_between(source_space(), target_space);
  }
};

} // namespace oruga::testing

#endif
