#include "fdlab/value.hpp"

#include <algorithm>
#include <mutex>
#include <unordered_set>

namespace fdlab {
namespace {

class Interner {
 public:
  const std::string* intern(std::string_view text) {
    std::lock_guard lock(mutex_);
    return &*pool_.emplace(text).first;
  }

 private:
  std::mutex mutex_;
  // Node-based, so element addresses are stable for the process lifetime.
  std::unordered_set<std::string> pool_;
};

Interner& interner() {
  static Interner instance;
  return instance;
}

}  // namespace

Value::Value() : text_(interner().intern({})) {}

Value::Value(std::string_view text) : text_(interner().intern(text)) {}

void normalize(ValueSet& set) {
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
}

ValueSet make_value_set(std::initializer_list<std::string_view> texts) {
  ValueSet out;
  out.reserve(texts.size());
  for (auto t : texts) out.emplace_back(t);
  normalize(out);
  return out;
}

bool contains(const ValueSet& set, Value v) {
  return std::binary_search(set.begin(), set.end(), v);
}

ValueSet set_union(const ValueSet& a, const ValueSet& b) {
  ValueSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

ValueSet set_intersection(const ValueSet& a, const ValueSet& b) {
  ValueSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::size_t intersection_size(const ValueSet& a, const ValueSet& b) {
  std::size_t n = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++n;
      ++i;
      ++j;
    }
  }
  return n;
}

bool intersects(const ValueSet& a, const ValueSet& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      return true;
    }
  }
  return false;
}

}  // namespace fdlab
