#include "prlab/partition.hpp"

#include "prlab/errors.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace prlab {

namespace {

int validate_rgs(const std::vector<std::uint8_t>& a) {
  if (a.empty()) throw invalid_config("partition: empty growth string");
  if (a[0] != 0) throw invalid_config("partition: growth string must start at 0");
  int mx = 0;
  for (std::size_t i = 1; i < a.size(); ++i) {
    if (a[i] > mx + 1) throw invalid_config("partition: growth condition violated");
    mx = std::max(mx, static_cast<int>(a[i]));
  }
  return mx + 1;
}

}  // namespace

SetPartition::SetPartition(std::vector<std::uint8_t> rgs) : a_(std::move(rgs)) {
  blocks_ = validate_rgs(a_);
}

SetPartition SetPartition::from_labels(std::span<const int> labels) {
  std::vector<std::uint8_t> a;
  a.reserve(labels.size());
  std::unordered_map<int, std::uint8_t> seen;
  for (int lab : labels) {
    auto it = seen.find(lab);
    if (it == seen.end()) it = seen.emplace(lab, static_cast<std::uint8_t>(seen.size())).first;
    a.push_back(it->second);
  }
  return SetPartition(std::move(a));
}

SetPartition SetPartition::bottom(int k) {
  std::vector<std::uint8_t> a(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) a[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(i);
  return SetPartition(std::move(a));
}

SetPartition SetPartition::top(int k) {
  return SetPartition(std::vector<std::uint8_t>(static_cast<std::size_t>(k), 0));
}

std::vector<std::vector<int>> SetPartition::blocks() const {
  std::vector<std::vector<int>> out(static_cast<std::size_t>(blocks_));
  for (int i = 0; i < k(); ++i) out[a_[static_cast<std::size_t>(i)]].push_back(i + 1);
  return out;
}

bool refines(const SetPartition& a, const SetPartition& b) {
  if (a.k() != b.k()) throw invalid_config("refines: mismatched ground sets");
  // a-block -> b-block must be a function.
  std::vector<int> image(static_cast<std::size_t>(a.block_count()), -1);
  for (int i = 0; i < a.k(); ++i) {
    int ab = a.block_of(i), bb = b.block_of(i);
    if (image[ab] < 0)
      image[ab] = bb;
    else if (image[ab] != bb)
      return false;
  }
  return true;
}

SetPartition meet(const SetPartition& a, const SetPartition& b) {
  if (a.k() != b.k()) throw invalid_config("meet: mismatched ground sets");
  std::vector<int> labels(static_cast<std::size_t>(a.k()));
  for (int i = 0; i < a.k(); ++i)
    labels[static_cast<std::size_t>(i)] = a.block_of(i) * (b.block_count() + 1) + b.block_of(i);
  return SetPartition::from_labels(labels);
}

SetPartition join(const SetPartition& a, const SetPartition& b) {
  if (a.k() != b.k()) throw invalid_config("join: mismatched ground sets");
  const int k = a.k();
  std::vector<int> parent(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) parent[static_cast<std::size_t>(i)] = i;
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  auto unite = [&](int x, int y) { parent[static_cast<std::size_t>(find(x))] = find(y); };
  std::vector<int> first_a(static_cast<std::size_t>(a.block_count()), -1);
  std::vector<int> first_b(static_cast<std::size_t>(b.block_count()), -1);
  for (int i = 0; i < k; ++i) {
    int& fa = first_a[a.block_of(i)];
    if (fa < 0) fa = i; else unite(i, fa);
    int& fb = first_b[b.block_of(i)];
    if (fb < 0) fb = i; else unite(i, fb);
  }
  std::vector<int> labels(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) labels[static_cast<std::size_t>(i)] = find(i);
  return SetPartition::from_labels(labels);
}

SetPartition parse_partition(const std::string& raw, int k) {
  if (k < 1 || k > 64) throw invalid_config("parse_partition: k out of range");
  std::string text;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) text += c;
  std::vector<int> labels(static_cast<std::size_t>(k), -1);
  int block = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t bar = text.find('|', pos);
    std::string part = text.substr(pos, bar == std::string::npos ? std::string::npos : bar - pos);
    if (part.empty()) throw invalid_config("parse_partition: empty block in '" + text + "'");
    std::vector<int> elems;
    if (part.find(',') != std::string::npos) {
      std::istringstream in(part);
      std::string tok;
      while (std::getline(in, tok, ',')) {
        if (tok.empty()) throw invalid_config("parse_partition: empty element in '" + text + "'");
        std::size_t used = 0;
        int e = 0;
        try {
          e = std::stoi(tok, &used);
        } catch (const std::exception&) {
          throw invalid_config("parse_partition: bad element '" + tok + "'");
        }
        if (used != tok.size()) throw invalid_config("parse_partition: bad element '" + tok + "'");
        elems.push_back(e);
      }
    } else {
      if (k > 9)
        throw invalid_config("parse_partition: k > 9 requires comma-separated elements");
      for (char c : part) {
        if (c < '0' || c > '9') throw invalid_config("parse_partition: bad character in '" + text + "'");
        elems.push_back(c - '0');
      }
    }
    for (int e : elems) {
      if (e < 1 || e > k)
        throw invalid_config("parse_partition: element " + std::to_string(e) + " outside 1.." + std::to_string(k));
      if (labels[static_cast<std::size_t>(e - 1)] >= 0)
        throw invalid_config("parse_partition: duplicate element " + std::to_string(e));
      labels[static_cast<std::size_t>(e - 1)] = block;
    }
    ++block;
    if (bar == std::string::npos) break;
    pos = bar + 1;
  }
  for (int i = 0; i < k; ++i)
    if (labels[static_cast<std::size_t>(i)] < 0)
      throw invalid_config("parse_partition: missing element " + std::to_string(i + 1));
  return SetPartition::from_labels(labels);
}

std::string format_partition(const SetPartition& p) {
  std::string out;
  bool commas = p.k() > 9;
  auto blocks = p.blocks();
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (b) out += '|';
    for (std::size_t i = 0; i < blocks[b].size(); ++i) {
      if (i && commas) out += ',';
      out += std::to_string(blocks[b][i]);
    }
  }
  return out;
}

}  // namespace prlab
