#ifndef ORUGA_CONSPEC_HPP
#define ORUGA_CONSPEC_HPP

#include "oruga/typesys.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace oruga {

struct ConstructorSig {
  std::vector<TypeName> inputs;
  TypeName output;

  std::size_t arity() const { return inputs.size(); }
  friend bool operator==(const ConstructorSig&, const ConstructorSig&) = default;
};

/// Named constructors with signatures, bound by name to a type system.
class ConSpec {
public:
  ConSpec() = default;

  const std::string& name() const { return name_; }
  const std::string& type_system_name() const { return type_system_; }
  const std::map<std::string, ConstructorSig>& constructors() const {
    return constructors_;
  }

  bool has(const std::string& constructor) const {
    return constructors_.count(constructor) > 0;
  }
  /// Throws UnknownConstructor.
  const ConstructorSig& signature_of(const std::string& constructor) const;

  friend bool operator==(const ConSpec&, const ConSpec&) = default;

  friend ConSpec
  build_con_spec(std::string name, const TypeSystem& type_system,
                 const std::vector<std::pair<std::string, ConstructorSig>>& decls);

private:
  std::string name_;
  std::string type_system_;
  std::map<std::string, ConstructorSig> constructors_;
};

/// Throws DuplicateConstructor, UnknownType or EmptyInputs.
ConSpec build_con_spec(std::string name, const TypeSystem& type_system,
                       const std::vector<std::pair<std::string, ConstructorSig>>& decls);

} // namespace oruga

#endif
