#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "olyrank/tournament.hpp"
#include "test_support.hpp"

using namespace olyrank;

namespace {

Tournament parse(const std::string& body) {
  std::istringstream in("round,team_a,team_b,game_points_a\n" + body);
  return parse_results(in);
}

// Round robin of four teams, three rounds:
//   R1 A-B 3:1,   C-D 2:2
//   R2 A-C 2.5:1.5, B-D 4:0
//   R3 A-D 2:2,   B-C 1.5:2.5
const char* kRoundRobin =
    "1,A,B,3\n1,C,D,2\n"
    "2,A,C,2.5\n2,B,D,4\n"
    "3,A,D,2\n3,B,C,1.5\n";

}  // namespace

TEST(ParseResults, MapsFieldsDirectly) {
  const auto t = parse("1,UKR,RUS1,2.5\n");
  ASSERT_EQ(t.matches().size(), 1u);
  const auto& m = t.matches()[0];
  EXPECT_EQ(m.round, 1);
  EXPECT_EQ(m.team_a, "UKR");
  EXPECT_EQ(m.team_b, "RUS1");
  EXPECT_EQ(m.game_points_a.value(), 2.5);
  EXPECT_EQ(m.game_points_b().value(), 1.5);
  EXPECT_EQ(t.size(), 2u);
  EXPECT_FALSE(t.teams()[0].start_rank.has_value());
}

TEST(ParseResults, RejectsTeamPlayingItself) {
  try {
    parse("1,UKR,RUS1,2.5\n3,HUN,HUN,2.0\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(ParseResults, RejectsOffGridGamePoints) {
  try {
    parse("2,ISR,ESP,2.25\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(parse("1,ISR,ESP,4.5\n"), ParseError);
  EXPECT_THROW(parse("1,ISR,ESP,-0.5\n"), ParseError);
  EXPECT_THROW(parse("1,ISR,ESP,two\n"), ParseError);
}

TEST(ParseResults, RejectsStructuralErrors) {
  EXPECT_THROW(parse("1,A,B,2\n2,B,A,3\n"), ParseError);        // duplicate pair
  EXPECT_THROW(parse("1,A,B,2\n1,A,C,3\n"), ParseError);        // A twice in round 1
  EXPECT_THROW(parse("1,A,B\n"), ParseError);                   // missing field
  EXPECT_THROW(parse("0,A,B,2\n"), ParseError);                 // round must be positive
  std::istringstream bad_header("round,a,b,points\n1,A,B,2\n");
  EXPECT_THROW(parse_results(bad_header), ParseError);
}

TEST(ParseResults, UsesRosterOrderAndRejectsUnknownTeams) {
  std::istringstream roster_in("id,name,start_rank\nB,Bravo,2\nA,\"Alpha, Team\",1\n");
  const auto roster = parse_roster(roster_in);
  ASSERT_EQ(roster.size(), 2u);
  EXPECT_EQ(roster[1].name, "Alpha, Team");
  std::istringstream results("round,team_a,team_b,game_points_a\n1,A,B,3\n");
  const auto t = parse_results(results, &roster);
  EXPECT_EQ(t.index_of("B"), 0u);
  EXPECT_EQ(t.teams()[1].start_rank, 1);

  std::istringstream unknown("round,team_a,team_b,game_points_a\n1,A,C,3\n");
  EXPECT_THROW(parse_results(unknown, &roster), ParseError);
}

TEST(Tournament, RejectsBadStartRanks) {
  std::vector<Team> teams{{"A", "A", 1}, {"B", "B", 1}};
  EXPECT_THROW(Tournament(teams, 0, {}), ValidationError);
}

TEST(ScoreTable, SingleWin) {
  const auto s = compute_score_table(parse("1,A,B,3\n"));
  EXPECT_EQ(s.rows[0].match_points, 2);
  EXPECT_EQ(s.rows[0].game_points, 3.0);
  EXPECT_EQ(s.rows[1].match_points, 0);
  EXPECT_EQ(s.rows[1].game_points, 1.0);
  EXPECT_EQ(s.rows[0].wins, 1);
  EXPECT_EQ(s.rows[1].losses, 1);
}

TEST(ScoreTable, DrawGivesOneMatchPointEach) {
  const auto s = compute_score_table(parse("1,A,B,2\n"));
  EXPECT_EQ(s.rows[0].match_points, 1);
  EXPECT_EQ(s.rows[1].match_points, 1);
  EXPECT_EQ(s.rows[0].draws, 1);
}

TEST(ScoreTable, RoundRobinHandComputed) {
  const auto t = parse(kRoundRobin);
  const auto s = compute_score_table(t);
  // Hand computation; ties at the lowest opponent drop the smaller contribution.
  struct Expected {
    const char* id;
    int tb1;
    double tb2, tb3;
    int tb4;
    double f;
  };
  const Expected expected[] = {
      {"A", 5, 13.5, 7.5, 5, 8.0 / 3},
      {"B", 2, 9.5, 6.5, 8, 5.0 / 3},
      {"C", 3, 12.5, 6.0, 7, 2.0},
      {"D", 2, 16.0, 4.0, 8, 5.0 / 3},
  };
  for (const auto& e : expected) {
    const auto& row = s.rows[t.at(e.id)];
    SCOPED_TRACE(e.id);
    EXPECT_EQ(row.match_points, e.tb1);
    EXPECT_EQ(row.sonneborn_berger, e.tb2);
    EXPECT_EQ(row.game_points, e.tb3);
    EXPECT_EQ(row.buchholz, e.tb4);
    EXPECT_DOUBLE_EQ(row.mix_factor, e.f);
  }
  EXPECT_TRUE(s.short_schedule.empty());
}

TEST(ScoreTable, ShortScheduleUsesOwnMatchCount) {
  // D plays once; A and C twice; B in every round.
  const auto t = parse("1,A,B,3\n2,A,C,1\n2,B,D,2\n3,B,C,4\n");
  const auto s = compute_score_table(t);
  EXPECT_EQ(s.short_schedule, (std::vector<std::string>{"A", "C", "D"}));
  const auto& c = s.rows[t.at("C")];
  EXPECT_EQ(c.matches(), 2);
  EXPECT_DOUBLE_EQ(c.mix_factor, (3.0 * 1 + 1) / 2);
}

TEST(ScoreTable, PropertiesOnRandomTournaments) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng() % 29;
    const auto t = fixtures::random_tournament(rng, n, 1 + static_cast<int>(rng() % 9));
    const auto s = compute_score_table(t);
    int total_mp = 0;
    double total_gp = 0;
    for (const auto& row : s.rows) {
      EXPECT_EQ(row.match_points, 2 * row.wins + row.draws);
      EXPECT_GE(row.mix_factor, 1.0);
      EXPECT_LE(row.mix_factor, 3.0);
      total_mp += row.match_points;
      total_gp += row.game_points;
    }
    EXPECT_EQ(total_mp, 2 * static_cast<int>(t.matches().size()));
    EXPECT_EQ(total_gp, 4.0 * t.matches().size());
    for (const auto& m : t.matches()) {
      EXPECT_EQ(m.game_points_a.match_points() + m.game_points_b().match_points(), 2);
      EXPECT_EQ(m.game_points_a.value() + m.game_points_b().value(), 4.0);
    }
  }
}

TEST(ResultDistribution, EmptyAndSingle) {
  EXPECT_EQ(result_distribution(Tournament{}).total(), 0u);
  const auto h = result_distribution(parse("1,A,B,0\n"));
  EXPECT_EQ(h.counts, (std::array<std::size_t, 5>{0, 0, 0, 0, 1}));
  const auto d = result_distribution(parse("1,A,B,2\n1,C,D,1.5\n"));
  EXPECT_EQ(d.counts, (std::array<std::size_t, 5>{1, 1, 0, 0, 0}));
}

TEST(ResultsFormat, RoundTripIsIdentity) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto t = fixtures::random_tournament(rng, 2 + rng() % 20, 1 + static_cast<int>(rng() % 7));
    std::stringstream results, roster;
    write_results(t, results);
    write_roster(t, roster);
    const auto teams = parse_roster(roster);
    const auto back = parse_results(results, &teams);
    EXPECT_EQ(back, t);
  }
}
