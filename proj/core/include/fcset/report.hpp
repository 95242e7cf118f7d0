#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fcset/config.hpp"

namespace fcs {

/// One report record: an ordered list of key=value pairs with stable key
/// names. Records render either as aligned text or as one machine-readable
/// `key=value` line each.
struct Record {
  std::vector<std::pair<std::string, std::string>> fields;

  Record& set(std::string key, std::string value) {
    fields.emplace_back(std::move(key), std::move(value));
    return *this;
  }
  Record& set(std::string key, long value) { return set(std::move(key), std::to_string(value)); }
  Record& pass(bool ok) { return set("status", ok ? "pass" : "fail"); }
  bool passed() const;
  std::string line() const;
};

struct Report {
  std::vector<Record> records;

  Record& add() { return records.emplace_back(); }
  Record& check(const std::string& name, bool ok) { return add().set("check", name).pass(ok); }
  void merge(const Report& other) {
    records.insert(records.end(), other.records.begin(), other.records.end());
  }
  bool all_pass() const;
  long fail_count() const;
  std::string render(OutputFormat fmt) const;
};

}  // namespace fcs
