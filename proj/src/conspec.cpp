#include "oruga/conspec.hpp"

#include "oruga/error.hpp"

namespace oruga {

const ConstructorSig& ConSpec::signature_of(const std::string& constructor) const {
  auto it = constructors_.find(constructor);
  if (it == constructors_.end()) {
    throw Error(ErrorKind::UnknownConstructor,
                "constructor '" + constructor + "' is not in " + name_);
  }
  return it->second;
}

ConSpec build_con_spec(std::string name, const TypeSystem& type_system,
                       const std::vector<std::pair<std::string, ConstructorSig>>& decls) {
  if (decls.empty()) {
    throw Error(ErrorKind::EmptyInputs, "conSpec " + name + " has no constructors");
  }
  ConSpec cs;
  cs.name_ = std::move(name);
  cs.type_system_ = type_system.name();
  for (const auto& [ctor, sig] : decls) {
    if (sig.inputs.empty()) {
      throw Error(ErrorKind::EmptyInputs,
                  "constructor '" + ctor + "' has no inputs");
    }
    auto check = [&](const TypeName& t) {
      if (!type_system.knows(t)) {
        throw Error(ErrorKind::UnknownType, "constructor '" + ctor +
                                                "' mentions unknown type '" + t +
                                                "'");
      }
    };
    for (const auto& t : sig.inputs) check(t);
    check(sig.output);
    if (!cs.constructors_.emplace(ctor, sig).second) {
      throw Error(ErrorKind::DuplicateConstructor,
                  "constructor '" + ctor + "' declared twice in " + cs.name_);
    }
  }
  return cs;
}

} // namespace oruga
