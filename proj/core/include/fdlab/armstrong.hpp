#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <vector>

#include "fdlab/error.hpp"
#include "fdlab/fd.hpp"

namespace fdlab {

/// A duplicate-free, sorted set of FDs over one schema.
class FdSet {
 public:
  FdSet() = default;
  explicit FdSet(std::vector<FunctionalDependency> fds);
  FdSet(std::initializer_list<FunctionalDependency> fds);

  std::size_t size() const noexcept { return fds_.size(); }
  bool empty() const noexcept { return fds_.empty(); }
  const FunctionalDependency& operator[](std::size_t i) const { return fds_[i]; }
  auto begin() const noexcept { return fds_.begin(); }
  auto end() const noexcept { return fds_.end(); }
  bool contains(const FunctionalDependency& fd) const;
  const std::vector<FunctionalDependency>& fds() const noexcept { return fds_; }

 private:
  std::vector<FunctionalDependency> fds_;
};

/// X+ under F.
AttrSet attribute_closure(const FdSet& f, const AttrSet& x);

/// F |= X -> Y, i.e. Y is contained in X+.
bool implies(const FdSet& f, const FunctionalDependency& fd);

enum class Axiom { Reflexivity, Augmentation, Transitivity };

struct PremiseRef {
  enum class Source { Base, Step };
  Source source = Source::Base;
  std::size_t index = 0;

  static PremiseRef base(std::size_t i) { return {Source::Base, i}; }
  static PremiseRef step(std::size_t i) { return {Source::Step, i}; }
  friend bool operator==(const PremiseRef&, const PremiseRef&) = default;
};

/// One axiom application. Reflexivity takes no premise, augmentation one (and
/// the augmenting set), transitivity two whose middle sets must coincide.
struct DerivationStep {
  Axiom axiom = Axiom::Reflexivity;
  FunctionalDependency conclusion;
  std::vector<PremiseRef> premises;
  AttrSet augment_by;
};

struct Derivation {
  FunctionalDependency conclusion;
  std::vector<DerivationStep> steps;
};

/// A step whose shape does not match its axiom (wrong premise count).
class MalformedDerivation : public Error {
 public:
  using Error::Error;
};

/// An axiom-only proof of `fd` from `f`, or nothing when `fd` is not implied.
/// Steps come in canonical order: reflexivities, then augmentations, then
/// transitivities.
std::optional<Derivation> derive(const FdSet& f, const FunctionalDependency& fd);

/// True iff every step is a valid axiom instance over base members or earlier
/// steps and the last step concludes `d.conclusion`. Throws MalformedDerivation
/// for steps with the wrong number of premises.
bool check_derivation(const FdSet& f, const Derivation& d);

}  // namespace fdlab
