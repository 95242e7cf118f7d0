#include "fcset/model_io.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "fcset/errors.hpp"

namespace fcs {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream in(line);
  std::string t;
  while (in >> t) {
    if (t[0] == '#') break;
    toks.push_back(t);
  }
  return toks;
}

Rat parse_rational_token(const std::string& tok, int line_no) {
  size_t slash = tok.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(tok));
    Int num(tok.substr(0, slash));
    Int den(tok.substr(slash + 1));
    if (den <= 0) throw std::invalid_argument("denominator");
    return rat_of(num, den);
  } catch (const std::invalid_argument&) {
    throw ParseError("malformed rational '" + tok + "'", line_no, 1);
  }
}

int parse_index(const std::string& tok, int line_no, int rank, const char* what) {
  for (char c : tok)
    if (!isdigit((unsigned char)c))
      throw ParseError(std::string("malformed ") + what + " '" + tok + "'", line_no, 1);
  long v = std::stol(tok);
  if (v < 0 || v >= rank)
    throw ParseError(std::string(what) + " out of range: " + tok, line_no, 1);
  return (int)v;
}

}  // namespace

ModelFile parse_model(const std::string& text) {
  ModelFile mf;
  bool saw_name = false, saw_labels = false, saw_weights = false, saw_fusion = false;
  enum class Block { None, Fusion, SMatrix } block = Block::None;
  std::map<std::tuple<int, int, int>, std::pair<int, int>> quads;  // -> (mult, line)
  std::set<std::pair<int, int>> sm_seen;
  int line_no = 0;

  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    auto toks = tokenize(line);
    if (toks.empty()) continue;

    if (block == Block::Fusion) {
      if (toks[0] == "}") {
        block = Block::None;
        continue;
      }
      if (toks.size() != 4) throw ParseError("fusion entry needs 4 fields", line_no, 1);
      if (!saw_labels) throw ParseError("fusion block before labels", line_no, 1);
      int rank = (int)mf.labels.size();
      int i = parse_index(toks[0], line_no, rank, "fusion index");
      int j = parse_index(toks[1], line_no, rank, "fusion index");
      int k = parse_index(toks[2], line_no, rank, "fusion index");
      long mult = std::stol(toks[3]);
      if (mult <= 0) throw ParseError("fusion multiplicity must be positive", line_no, 1);
      auto key = std::make_tuple(std::min(i, j), std::max(i, j), k);
      auto it = quads.find(key);
      if (it != quads.end()) {
        if (it->second.first != (int)mult)
          throw ParseError("duplicate fusion entry with conflicting multiplicity (see line " +
                               std::to_string(it->second.second) + ")",
                           line_no, 1);
      } else {
        quads[key] = {(int)mult, line_no};
      }
      continue;
    }

    if (block == Block::SMatrix) {
      if (toks[0] == "}") {
        block = Block::None;
        continue;
      }
      if (!mf.smatrix) throw ParseError("smatrix entry outside a block", line_no, 1);
      if (toks[0] == "conductor") {
        if (toks.size() != 2) throw ParseError("conductor needs one value", line_no, 1);
        mf.smatrix->conductor = std::stol(toks[1]);
        if (mf.smatrix->conductor < 1) throw ParseError("conductor must be positive", line_no, 1);
        continue;
      }
      if (toks[0] == "entry") {
        if (mf.smatrix->conductor < 1)
          throw ParseError("smatrix entry before conductor", line_no, 1);
        if (toks.size() < 4) throw ParseError("entry needs: entry i j literal", line_no, 1);
        int rank = (int)mf.labels.size();
        int i = parse_index(toks[1], line_no, rank, "smatrix index");
        int j = parse_index(toks[2], line_no, rank, "smatrix index");
        if (!sm_seen.insert({i, j}).second)
          throw ParseError("duplicate smatrix entry", line_no, 1);
        // the literal is the raw remainder of the line after three tokens
        size_t cursor = 0;
        for (int skip = 0; skip < 3; ++skip) {
          while (cursor < line.size() && isspace((unsigned char)line[cursor])) ++cursor;
          while (cursor < line.size() && !isspace((unsigned char)line[cursor])) ++cursor;
        }
        std::string literal = line.substr(cursor);
        size_t hash = literal.find('#');
        if (hash != std::string::npos) literal = literal.substr(0, hash);
        try {
          mf.smatrix->entries[i][j] = parse_cyclotomic(literal, mf.smatrix->conductor);
        } catch (const ParseError& e) {
          throw ParseError("bad cyclotomic literal: " + std::string(e.what()), line_no, e.col);
        }
        continue;
      }
      throw ParseError("unknown smatrix field '" + toks[0] + "'", line_no, 1);
    }

    const std::string& key = toks[0];
    if (key == "name") {
      if (saw_name) throw ParseError("duplicate name", line_no, 1);
      if (toks.size() != 2) throw ParseError("name needs one identifier", line_no, 1);
      mf.name = toks[1];
      saw_name = true;
    } else if (key == "labels") {
      if (saw_labels) throw ParseError("duplicate labels", line_no, 1);
      if (toks.size() < 2) throw ParseError("labels needs at least one entry", line_no, 1);
      mf.labels.assign(toks.begin() + 1, toks.end());
      std::set<std::string> uniq(mf.labels.begin(), mf.labels.end());
      if (uniq.size() != mf.labels.size())
        throw ParseError("labels must be unique", line_no, 1);
      saw_labels = true;
    } else if (key == "weights") {
      if (saw_weights) throw ParseError("duplicate weights", line_no, 1);
      if (!saw_labels) throw ParseError("weights before labels", line_no, 1);
      if (toks.size() != mf.labels.size() + 1)
        throw ParseError("weights count must match labels", line_no, 1);
      for (size_t t = 1; t < toks.size(); ++t)
        mf.weights.push_back(parse_rational_token(toks[t], line_no));
      saw_weights = true;
    } else if (key == "fusion") {
      if (saw_fusion) throw ParseError("duplicate fusion block", line_no, 1);
      if (toks.size() != 2 || toks[1] != "{")
        throw ParseError("expected 'fusion {'", line_no, 1);
      if (!saw_labels) throw ParseError("fusion before labels", line_no, 1);
      block = Block::Fusion;
      saw_fusion = true;
    } else if (key == "smatrix") {
      if (mf.smatrix) throw ParseError("duplicate smatrix block", line_no, 1);
      if (toks.size() != 2 || toks[1] != "{")
        throw ParseError("expected 'smatrix {'", line_no, 1);
      if (!saw_labels) throw ParseError("smatrix before labels", line_no, 1);
      block = Block::SMatrix;
      mf.smatrix = SMatrixInput{0, std::vector<std::vector<Cyclotomic>>(
                                       mf.labels.size(),
                                       std::vector<Cyclotomic>(mf.labels.size()))};
      mf.smatrix->conductor = 0;
    } else {
      throw ParseError("unknown directive '" + key + "'", line_no, 1);
    }
  }
  if (block != Block::None) throw ParseError("unterminated block", line_no, 1);
  if (!saw_name) throw ParseError("missing name", line_no, 1);
  if (!saw_labels) throw ParseError("missing labels", line_no, 1);
  if (!saw_weights) throw ParseError("missing weights", line_no, 1);
  if (mf.smatrix) {
    if (mf.smatrix->conductor < 1) throw ParseError("smatrix without conductor", line_no, 1);
    if (sm_seen.size() != mf.labels.size() * mf.labels.size())
      throw ParseError("smatrix block is incomplete", line_no, 1);
  }
  for (auto& [key2, val] : quads)
    mf.fusion.push_back({std::get<0>(key2), std::get<1>(key2), std::get<2>(key2), val.first});
  std::sort(mf.fusion.begin(), mf.fusion.end());
  return mf;
}

std::string write_model(const ModelFile& mf) {
  std::ostringstream out;
  out << "name " << mf.name << "\n";
  out << "labels";
  for (const auto& l : mf.labels) out << " " << l;
  out << "\nweights";
  for (const auto& w : mf.weights)
    out << " " << w.get_num().get_str() << "/" << w.get_den().get_str();
  out << "\nfusion {\n";
  std::vector<FusionQuad> quads;
  for (const auto& q : mf.fusion) {
    FusionQuad c{std::min(q.i, q.j), std::max(q.i, q.j), q.k, q.mult};
    if (c.i == 0 && c.j == c.k && c.mult == 1) continue;  // implied vacuum diagonal
    quads.push_back(c);
  }
  std::sort(quads.begin(), quads.end());
  quads.erase(std::unique(quads.begin(), quads.end()), quads.end());
  for (const auto& q : quads)
    out << "  " << q.i << " " << q.j << " " << q.k << " " << q.mult << "\n";
  out << "}\n";
  if (mf.smatrix) {
    out << "smatrix {\n  conductor " << mf.smatrix->conductor << "\n";
    for (size_t i = 0; i < mf.smatrix->entries.size(); ++i)
      for (size_t j = 0; j < mf.smatrix->entries[i].size(); ++j)
        out << "  entry " << i << " " << j << " " << mf.smatrix->entries[i][j].str() << "\n";
    out << "}\n";
  }
  return out.str();
}

FusionData to_fusion_data(const ModelFile& mf) {
  FusionData f = FusionData::make(mf.labels, mf.weights);
  int rank = f.rank();
  std::vector<bool> vacuum_explicit(rank, false);
  for (const auto& q : mf.fusion) {
    if (q.i == 0) vacuum_explicit[q.j] = true;
    if (q.j == 0) vacuum_explicit[q.i] = true;
  }
  for (int q = 0; q < rank; ++q)
    if (!vacuum_explicit[q]) {
      f.set_n(0, q, q, 1);
      f.set_n(q, 0, q, 1);
    }
  for (const auto& q : mf.fusion) {
    f.set_n(q.i, q.j, q.k, q.mult);
    f.set_n(q.j, q.i, q.k, q.mult);
  }
  return f;
}

ModelFile from_fusion_data(const std::string& name, const FusionData& f,
                           std::optional<SMatrixInput> smatrix) {
  ModelFile mf;
  mf.name = name;
  mf.labels = f.labels;
  mf.weights = f.weights;
  int rank = f.rank();
  for (int i = 0; i < rank; ++i)
    for (int j = i; j < rank; ++j)
      for (int k = 0; k < rank; ++k) {
        int mult = f.n(i, j, k);
        if (mult == 0) continue;
        if (i == 0 && j == k && mult == 1) continue;
        mf.fusion.push_back({i, j, k, mult});
      }
  std::sort(mf.fusion.begin(), mf.fusion.end());
  mf.smatrix = std::move(smatrix);
  return mf;
}

}  // namespace fcs
