#pragma once

// Discrete data of a stable log map to a rank-k Deligne–Faltings target:
// genus, number of markings, the degree d_i of each line bundle on the curve
// class, and the contact order of every marking with every divisor.

#include "fslog/error.hpp"
#include "fslog/integer.hpp"
#include "fslog/monoid.hpp"

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

namespace fslog {

class DiscreteData {
 public:
  DiscreteData() = default;
  // contacts[j][i]: contact order of marking j along divisor i.
  DiscreteData(Integer genus, std::size_t num_marks, std::vector<Integer> degrees,
               std::vector<std::vector<Integer>> contacts)
      : genus_(std::move(genus)), num_marks_(num_marks), degrees_(std::move(degrees)), contacts_(std::move(contacts)) {
    if (genus_ < 0) throw Error(ErrorCode::DimensionMismatch, "genus must be nonnegative");
    if (contacts_.size() != num_marks_)
      throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(num_marks_) + " contact rows");
    for (auto const& row : contacts_) {
      if (row.size() != degrees_.size())
        throw Error(ErrorCode::DimensionMismatch,
                    "contact rows must have " + std::to_string(degrees_.size()) + " entries");
      for (auto const& c : row)
        if (c < 0) throw Error(ErrorCode::DimensionMismatch, "contact orders must be nonnegative");
    }
  }

  Integer const& genus() const { return genus_; }
  std::size_t num_marks() const { return num_marks_; }
  std::size_t num_indices() const { return degrees_.size(); }
  std::vector<Integer> const& degrees() const { return degrees_; }
  std::vector<std::vector<Integer>> const& contacts() const { return contacts_; }

  friend bool operator==(DiscreteData const&, DiscreteData const&) = default;

 private:
  Integer genus_ = 0;
  std::size_t num_marks_ = 0;
  std::vector<Integer> degrees_;
  std::vector<std::vector<Integer>> contacts_;
};

// Each degree is the total contact order along its divisor.
inline bool validate(DiscreteData const& d) {
  for (std::size_t i = 0; i < d.num_indices(); ++i) {
    Integer sum = 0;
    for (auto const& row : d.contacts()) sum += row[i];
    if (sum != d.degrees()[i]) return false;
  }
  return true;
}

// The data of the i-th rank-one piece.
inline DiscreteData project(DiscreteData const& d, std::size_t i) {
  if (i >= d.num_indices())
    throw Error(ErrorCode::IndexOutOfRange,
                "index " + std::to_string(i) + " out of range for " + std::to_string(d.num_indices()) + " indices");
  std::vector<std::vector<Integer>> col;
  for (auto const& row : d.contacts()) col.push_back({row[i]});
  return DiscreteData(d.genus(), d.num_marks(), {d.degrees()[i]}, std::move(col));
}

// Reindexes data given over the stored generators of a sharp monoid P by its
// irreducibles. A dropped generator g must have its column (degree included)
// equal to sum m_t col_t for some decomposition g = sum m_t a_t over the
// irreducibles; decompositions need not be unique, so membership of (g, col_g)
// in the monoid generated by the (a_t, col_t) decides this.
inline DiscreteData irr_indexed(AffineMonoid const& p, DiscreteData const& raw) {
  auto const& gens = p.generators();
  if (raw.num_indices() != gens.size())
    throw Error(ErrorCode::DimensionMismatch, "data has " + std::to_string(raw.num_indices()) +
                                                  " columns, monoid has " + std::to_string(gens.size()) +
                                                  " generators");
  std::vector<Vector> irr = irreducibles(p);
  std::vector<std::size_t> kept;
  for (auto const& a : irr)
    kept.push_back(static_cast<std::size_t>(std::lower_bound(gens.begin(), gens.end(), a) - gens.begin()));

  auto augmented = [&](std::size_t i) {
    Vector c = gens[i];
    c.push_back(raw.degrees()[i]);
    for (auto const& row : raw.contacts()) c.push_back(row[i]);
    return c;
  };
  std::vector<Vector> lifted;
  for (std::size_t t : kept) lifted.push_back(augmented(t));
  AffineMonoid joint(p.ambient_rank() + 1 + raw.num_marks(), lifted);
  for (std::size_t g = 0; g < gens.size(); ++g) {
    if (std::binary_search(irr.begin(), irr.end(), gens[g])) continue;
    if (!element_of(augmented(g), joint))
      throw Error(ErrorCode::InconsistentContacts,
                  "data of reducible generator " + to_string(gens[g]) + " is not implied by the irreducibles");
  }

  std::vector<Integer> degrees;
  for (std::size_t t : kept) degrees.push_back(raw.degrees()[t]);
  std::vector<std::vector<Integer>> contacts;
  for (auto const& row : raw.contacts()) {
    std::vector<Integer> r;
    for (std::size_t t : kept) r.push_back(row[t]);
    contacts.push_back(std::move(r));
  }
  return DiscreteData(raw.genus(), raw.num_marks(), std::move(degrees), std::move(contacts));
}

}  // namespace fslog
