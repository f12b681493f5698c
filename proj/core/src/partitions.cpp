#include "blockforge/partitions.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <numeric>

#include "blockforge/error.hpp"

namespace blockforge {

Partition::Partition(std::vector<unsigned> parts) : parts_(std::move(parts)) {
  if (std::find(parts_.begin(), parts_.end(), 0u) != parts_.end()) throw InvalidArgument("partition parts must be positive");
  std::sort(parts_.begin(), parts_.end(), std::greater<>());
}

Partition Partition::parse(std::string_view text) {
  std::vector<unsigned> parts;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view tok = text.substr(pos, end - pos);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    unsigned v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size()) {
      throw InvalidArgument("bad partition part '" + std::string(tok) + "'");
    }
    parts.push_back(v);
    pos = end + 1;
  }
  bool up = std::is_sorted(parts.begin(), parts.end());
  bool down = std::is_sorted(parts.begin(), parts.end(), std::greater<>());
  if (!up && !down) throw InvalidArgument("partition parts must be monotone");
  return Partition(std::move(parts));
}

unsigned Partition::size() const noexcept { return std::accumulate(parts_.begin(), parts_.end(), 0u); }

Partition Partition::transpose() const {
  std::vector<unsigned> t;
  for (unsigned c = 1; !parts_.empty() && c <= parts_[0]; ++c) {
    unsigned len = 0;
    while (len < parts_.size() && parts_[len] >= c) ++len;
    t.push_back(len);
  }
  return Partition(std::move(t));
}

std::string Partition::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < parts_.size(); ++i) s += (i ? "," : "") + std::to_string(parts_[i]);
  return s + ")";
}

Partition two_core(const Partition& p) {
  std::vector<unsigned> rows = p.parts();
  auto part = [&](std::size_t i) { return i < rows.size() ? rows[i] : 0u; };
  for (bool removed = true; removed;) {
    removed = false;
    for (std::size_t i = 0; i < rows.size() && !removed; ++i) {
      if (rows[i] >= part(i + 1) + 2) {
        rows[i] -= 2;
        removed = true;
      } else if (i + 1 < rows.size() && rows[i] == rows[i + 1] && part(i + 2) < rows[i]) {
        --rows[i];
        --rows[i + 1];
        removed = true;
      }
    }
    while (!rows.empty() && rows.back() == 0) rows.pop_back();
  }
  return Partition(std::move(rows));
}

bool is_self_conjugate(const Partition& p) { return p.transpose() == p; }

bool in_principal_2block_Sn(const Partition& p) {
  Partition c = two_core(p);
  return p.size() % 2 == 0 ? c.empty() : c == Partition({1});
}

AlternatingWitness alternating_witness(unsigned n) {
  if (n < 8) throw InvalidArgument("alternating witness needs n >= 8");
  Partition w = n % 2 == 0 ? Partition({n - 3, 2, 1}) : Partition({n - 1, 1});
  return {w, two_core(w), is_self_conjugate(w), in_principal_2block_Sn(w)};
}

}  // namespace blockforge
