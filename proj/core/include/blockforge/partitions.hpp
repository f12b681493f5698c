#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace blockforge {

/// Integer partition with weakly decreasing positive parts.
class Partition {
 public:
  Partition() = default;
  /// Sorts the parts into decreasing order; throws InvalidArgument on a zero part.
  explicit Partition(std::vector<unsigned> parts);

  /// Comma-separated parts in either orientation, e.g. "5,2,1" or "1,2,5".
  static Partition parse(std::string_view text);

  const std::vector<unsigned>& parts() const noexcept { return parts_; }
  unsigned size() const noexcept;  // n
  bool empty() const noexcept { return parts_.empty(); }
  Partition transpose() const;
  std::string to_string() const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<unsigned> parts_;
};

/// Removes rim 2-hooks, topmost row first, until none is left.
Partition two_core(const Partition& p);

bool is_self_conjugate(const Partition& p);

/// Principal 2-block of S_n: 2-core empty for n even, (1) for n odd.
bool in_principal_2block_Sn(const Partition& p);

struct AlternatingWitness {
  Partition partition;
  Partition core;
  bool self_conjugate;
  bool principal;
};

/// (n-3, 2, 1) for even n, (n-1, 1) for odd n; n >= 8.
AlternatingWitness alternating_witness(unsigned n);

}  // namespace blockforge
