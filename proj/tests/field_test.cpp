#include <algorithm>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "fortsim/field.hpp"

namespace fortsim {
namespace {

// Pairwise scan, independent of the rotated-coordinate formula.
std::int64_t brute_span(const std::vector<Cell>& cells) {
  std::int64_t best = 0;
  for (Cell a : cells) {
    for (Cell b : cells) best = std::max(best, manhattan(a, b));
  }
  return best;
}

// Union-find over the cell list.
std::size_t brute_component_count(const std::vector<Cell>& cells) {
  std::vector<std::size_t> parent(cells.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < cells.size(); ++i) {
    for (std::size_t j = i + 1; j < cells.size(); ++j) {
      if (manhattan(cells[i], cells[j]) == 1) parent[find(i)] = find(j);
    }
  }
  std::set<std::size_t> roots;
  for (std::size_t i = 0; i < cells.size(); ++i) roots.insert(find(i));
  return roots.size();
}

Field random_scatter(std::mt19937_64& rng, int n, int extent) {
  std::uniform_int_distribution<int> d(-extent, extent);
  Field f;
  for (int i = 0; i < n; ++i) f.insert({d(rng), d(rng)});
  return f;
}

TEST(Manhattan, Examples) {
  EXPECT_EQ(manhattan({0, 0}, {0, 0}), 0);
  EXPECT_EQ(manhattan({0, 0}, {3, -2}), 5);
  EXPECT_EQ(manhattan({4, -7}, {-1, 2}), manhattan({-1, 2}, {4, -7}));
}

TEST(Span, Examples) {
  EXPECT_EQ(span(Field{{0, 0}}), 0);
  EXPECT_EQ(span(Field{{0, 0}, {1, 0}, {0, -1}, {1, -1}}), 2);
  const Field hollow{{0, 0}, {1, 0}, {2, 0}, {0, -1}, {2, -1}, {0, -2}, {1, -2}, {2, -2}};
  EXPECT_EQ(span(hollow), 4);
  EXPECT_THROW(span(Field{}), FieldError);
}

TEST(Span, MatchesPairwiseScan) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    const Field f = random_scatter(rng, 1 + t % 25, 12);
    EXPECT_EQ(span(f), brute_span(f.sorted_cells()));
  }
}

TEST(Span, MonotoneUnderSuperset) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 100; ++t) {
    Field a = random_scatter(rng, 1 + t % 10, 8);
    Field b = a;
    for (Cell c : random_scatter(rng, 5, 10).sorted_cells()) b.insert(c);
    EXPECT_LE(span(a), span(b));
  }
}

TEST(Components, Examples) {
  EXPECT_TRUE(components(Field{}).empty());
  const auto two = components(Field{{0, 0}, {1, 0}});
  ASSERT_EQ(two.size(), 1u);
  EXPECT_EQ(two[0].size(), 2u);
  EXPECT_EQ(components(Field{{0, 0}, {2, 0}}).size(), 2u);
  EXPECT_EQ(components(Field{{0, 0}, {1, 1}}).size(), 2u);
}

TEST(Components, OrderedByTopThenLeft) {
  const auto cs = components(Field{{5, 0}, {0, 3}, {-4, 3}, {9, -9}});
  ASSERT_EQ(cs.size(), 4u);
  EXPECT_EQ(cs[0].representative(), (Cell{-4, 3}));
  EXPECT_EQ(cs[1].representative(), (Cell{0, 3}));
  EXPECT_EQ(cs[2].representative(), (Cell{5, 0}));
  EXPECT_EQ(cs[3].representative(), (Cell{9, -9}));
}

TEST(Components, PartitionTheField) {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 200; ++t) {
    const Field f = random_scatter(rng, 1 + t % 30, 6);
    const auto cs = components(f);
    EXPECT_EQ(cs.size(), brute_component_count(f.sorted_cells()));
    std::size_t total = 0;
    for (std::size_t i = 0; i < cs.size(); ++i) {
      total += cs[i].size();
      for (std::size_t j = i + 1; j < cs.size(); ++j) EXPECT_GE(min_distance(cs[i], cs[j]), 2);
    }
    EXPECT_EQ(total, f.size());
  }
}

TEST(MinDistance, Examples) {
  const Component origin{{{0, 0}}};
  EXPECT_EQ(min_distance(origin, Component{{{0, 1}}}), 1);
  EXPECT_EQ(min_distance(origin, Component{{{7, 0}}}), 7);
  EXPECT_EQ(min_distance(origin, Component{{{3, 4}}}), 7);
}

TEST(RoughDisc, SmallRadii) {
  EXPECT_EQ(gen_rough_disc(1, 5), (Field{{0, 0}, {1, 0}, {-1, 0}, {0, 1}, {0, -1}}));
  const Field d2 = gen_rough_disc(2, 13);
  EXPECT_EQ(d2.size(), 13u);
  EXPECT_EQ(span(d2), 4);

  const Field d15 = gen_rough_disc(2, 15);
  EXPECT_EQ(d15.size(), 15u);
  EXPECT_TRUE(is_connected(d15));
  EXPECT_TRUE(d15.contains({0, 3}));
  EXPECT_TRUE(d15.contains({1, 2}));
}

TEST(RoughDisc, SizeFormulas) {
  EXPECT_EQ(rough_disc_min_size(3), 25);
  EXPECT_EQ(rough_disc_min_size(10), 221);
  EXPECT_EQ(rough_disc_max_size(3), 32);
  EXPECT_THROW(gen_rough_disc(3, 24), FieldError);
  EXPECT_THROW(gen_rough_disc(3, 32), FieldError);
}

TEST(RoughDisc, DistanceProfile) {
  for (int r = 1; r <= 7; ++r) {
    for (auto z = rough_disc_min_size(r); z < rough_disc_max_size(r); ++z) {
      const Field f = gen_rough_disc(r, z, static_cast<std::uint64_t>(z));
      EXPECT_EQ(static_cast<std::int64_t>(f.size()), z);
      EXPECT_TRUE(is_connected(f));
      for (Cell c : f.sorted_cells()) EXPECT_LE(norm1(c), r + 1);
      for (int x = -r; x <= r; ++x) {
        for (int y = -r; y <= r; ++y) {
          if (std::abs(x) + std::abs(y) <= r) {
            EXPECT_TRUE(f.contains({x, y}));
          }
        }
      }
    }
  }
}

TEST(RandomConnected, Properties) {
  EXPECT_EQ(gen_random_connected(1, 3), (Field{{0, 0}}));
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Field f = gen_random_connected(10 + static_cast<std::int64_t>(seed), seed);
    EXPECT_EQ(f.size(), 10 + seed);
    EXPECT_EQ(components(f).size(), 1u);
    EXPECT_TRUE(f.contains({0, 0}));
  }
  EXPECT_EQ(gen_random_connected(10, 7), gen_random_connected(10, 7));
}

TEST(TextFormat, Examples) {
  EXPECT_EQ(parse_field("origin 0 0\n#\n"), (Field{{0, 0}}));
  EXPECT_EQ(render_field(Field{{0, 0}, {1, 0}, {0, -1}, {1, -1}}), "origin 0 0\n##\n##\n");
  EXPECT_EQ(parse_field("origin -2 5\n.#\n#.\n"), (Field{{-1, 5}, {-2, 4}}));
  EXPECT_THROW(parse_field("#\n"), ParseError);
  EXPECT_THROW(parse_field("origin 0 0\n#x\n"), ParseError);
}

TEST(TextFormat, RoundTrip) {
  const Field disc = gen_rough_disc(3, 28);
  EXPECT_EQ(parse_field(render_field(disc)), disc);
  std::mt19937_64 rng(14);
  for (int t = 0; t < 200; ++t) {
    const Field f = random_scatter(rng, 1 + t % 40, 15);
    EXPECT_EQ(parse_field(render_field(f)), f);
    EXPECT_EQ(parse_field_json(render_field_json(f)), f);
    EXPECT_EQ(load_field(render_field_json(f)), f);
  }
}

TEST(JsonFormat, RejectsMalformed) {
  EXPECT_THROW(parse_field_json("{\"cells\": [[1]]}"), ParseError);
  EXPECT_THROW(parse_field_json("[1, 2]"), ParseError);
  EXPECT_THROW(parse_field_json("{"), ParseError);
}

}  // namespace
}  // namespace fortsim
