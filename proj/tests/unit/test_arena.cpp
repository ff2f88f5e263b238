#include "gvgrg/arena.hpp"
#include "gvgrg/fixtures.hpp"
#include "gvgrg/generators.hpp"

#include <boost/asio.hpp>
#include <boost/beast.hpp>
#include <doctest.h>
#include <httplib.h>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <set>

#include <unistd.h>

using namespace gvgrg;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& name)
{
  auto p = fs::temp_directory_path() / ("gvgrg_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

Ruleset endless()
{
  Ruleset r;
  r.interactions = {{"avatar", std::string(kEos), Effect::StepBack, 0, {}}};
  r.terminations = {{TerminationKind::SpriteCounter, {"avatar"}, 0, false}, {TerminationKind::Timeout, {}, 100000, true}};
  return r;
}

Ruleset instant_win()
{
  Ruleset r = endless();
  r.terminations[1].limit = 1;
  return r;
}

RulesetPool pool_with(std::vector<std::pair<std::string, Ruleset>> entries, const std::string& game = "aliens")
{
  RulesetPool pool;
  int i = 0;
  for (auto& [gen, r] : entries) pool.add({game, gen, gen + std::to_string(i++), r});
  return pool;
}

VoteRecord vote(const std::string& game, const std::string& a, const std::string& b, VoteChoice c, int n)
{
  VoteRecord v;
  v.session_id = "s" + std::to_string(n);
  v.game = game;
  v.generator_a = a;
  v.generator_b = b;
  v.choice = c;
  return v;
}

} // namespace

TEST_CASE("pool loading and validation")
{
  auto dir = temp_dir("pool");
  fs::create_directories(dir / "aliens" / "random");
  fs::create_directories(dir / "aliens" / "constructive");
  std::ofstream(dir / "aliens" / "random" / "r1.txt") << serialize_ruleset(endless());
  std::ofstream(dir / "aliens" / "constructive" / "c1.txt") << serialize_ruleset(instant_win());
  std::ofstream(dir / "aliens" / "notes.md") << "ignored";
  auto pool = RulesetPool::load(dir);
  CHECK(pool.size() == 2);
  REQUIRE(pool.entries("aliens").size() == 2);
  CHECK(pool.entries("aliens")[0].generator == "constructive");
  CHECK(pool.entries("aliens")[1].ruleset == endless());
  CHECK(pool.entries("solarfox").empty());

  std::ofstream(dir / "aliens" / "random" / "bad.txt") << "InteractionSet\n    avatar ghost > killSprite\n";
  CHECK_THROWS_AS(RulesetPool::load(dir), std::invalid_argument);
  CHECK_THROWS_AS(RulesetPool::load(dir / "missing"), std::invalid_argument);
  fs::remove_all(dir);
}

TEST_CASE("session pairing")
{
  SessionManager two(pool_with({{"random", endless()}, {"search", endless()}}), 1);
  std::set<std::pair<std::string, std::string>> orders;
  for (int i = 0; i < 40; ++i) {
    auto id = two.create("Aliens");
    two.restart(id, 0);
    two.restart(id, 1);
    std::string game;
    auto pair = two.vote_target(id, &game);
    CHECK(game == "aliens");
    CHECK(pair.first != pair.second);
    orders.insert(pair);
  }
  CHECK(orders.size() == 2);

  SessionManager one(pool_with({{"random", endless()}}), 1);
  try {
    one.create("aliens");
    FAIL("expected an error");
  } catch (const ArenaError& e) {
    CHECK(e.status() == 409);
  }
  try {
    one.create("pacman");
    FAIL("expected an error");
  } catch (const ArenaError& e) {
    CHECK(e.status() == 404);
  }
}

TEST_CASE("sessions draw rulesets uniformly")
{
  std::vector<std::pair<std::string, Ruleset>> entries;
  for (int i = 0; i < 10; ++i) entries.emplace_back("g" + std::to_string(i), endless());
  SessionManager m(pool_with(entries), 17);
  std::map<std::string, int> counts;
  const int n = 1000;
  for (int i = 0; i < n; ++i) {
    auto id = m.create("aliens");
    m.restart(id, 0);
    m.restart(id, 1);
    auto [a, b] = m.vote_target(id, nullptr);
    ++counts[a];
    ++counts[b];
  }
  CHECK(counts.size() == 10);
  const double p = 0.2;
  const double sigma = std::sqrt(n * p * (1 - p));
  for (const auto& [name, c] : counts) CHECK_MESSAGE(std::abs(c - n * p) < 3 * sigma, name << " " << c);
}

TEST_CASE("advancing games")
{
  SessionManager m(pool_with({{"random", endless()}, {"constructive", instant_win()}}), 3);
  auto id = m.create("aliens");
  auto blind = m.describe(id);
  CHECK(blind.find("random") == std::string::npos);
  CHECK(blind.find("constructive") == std::string::npos);

  // find which slot holds the instant win
  auto first = json::parse(m.advance(id, 0, "NIL"));
  CHECK(first["frame"] == 1);
  CHECK(first["score"] == 0);
  auto second = json::parse(m.advance(id, 1, "nil"));
  int win_slot = first["status"] == "win" ? 0 : 1;
  CHECK((win_slot == 0 ? first : second)["status"] == "win");
  CHECK((win_slot == 0 ? second : first)["status"] == "running");
  try {
    m.advance(id, win_slot, "NIL");
    FAIL("expected restart to be required");
  } catch (const ArenaError& e) {
    CHECK(e.status() == 409);
  }
  auto restarted = json::parse(m.restart(id, win_slot));
  CHECK(restarted["frame"] == 0);
  CHECK(json::parse(m.describe(id))["games"][win_slot]["plays"] == 2);

  CHECK_THROWS_AS(m.advance(id, 2, "NIL"), ArenaError);
  CHECK_THROWS_AS(m.advance(id, 0, "JUMP"), ArenaError);
  CHECK_THROWS_AS(m.advance(id, 0, "UP"), ArenaError); // FlakAvatar cannot move up
  CHECK_THROWS_AS(m.advance("feedface", 0, "NIL"), ArenaError);
}

TEST_CASE("voting requires both games")
{
  SessionManager m(pool_with({{"random", endless()}, {"search", endless()}}), 3);
  auto id = m.create("aliens");
  m.advance(id, 0, "NIL");
  CHECK_THROWS_AS(m.vote_target(id, nullptr), ArenaError);
  m.restart(id, 1);
  CHECK_NOTHROW(m.vote_target(id, nullptr));
}

TEST_CASE("vote store")
{
  auto dir = temp_dir("votes");
  auto file = dir / "votes.ndjson";
  {
    VoteStore store(file);
    auto v = store.append(vote("aliens", "random", "search", VoteChoice::Second, 0));
    CHECK(v.id == 1);
    CHECK_FALSE(v.timestamp.empty());
    CHECK(store.find(1) == v);
    CHECK_FALSE(store.find(2));
    CHECK(store.has_session("s0"));
    try {
      store.append(vote("aliens", "random", "search", VoteChoice::First, 0));
      FAIL("expected duplicate rejection");
    } catch (const ArenaError& e) {
      CHECK(e.status() == 409);
    }
    for (int i = 1; i <= 99; ++i) store.append(vote("solarfox", "random", "constructive", VoteChoice::Both, i));
    auto all = store.records();
    REQUIRE(all.size() == 100);
    for (std::size_t i = 0; i < all.size(); ++i) CHECK(all[i].id == static_cast<std::int64_t>(i + 1));
  }
  VoteStore reopened(file);
  auto all = reopened.records();
  REQUIRE(all.size() == 100);
  CHECK(all[0].choice == VoteChoice::Second);
  CHECK(all[99].session_id == "s99");
  CHECK(reopened.append(vote("aliens", "random", "search", VoteChoice::First, 500)).id == 101);

  VoteRecord r = all[5];
  r.comment = "line\nbreak \"quoted\"";
  CHECK(vote_from_json(vote_to_json(r)) == r);
  fs::remove_all(dir);
}

TEST_CASE("tally")
{
  std::vector<VoteRecord> records;
  int n = 0;
  for (int i = 0; i < 9; ++i) records.push_back(vote("aliens", "constructive", "random", VoteChoice::First, n++));
  records.push_back(vote("aliens", "random", "constructive", VoteChoice::First, n++));
  records.push_back(vote("aliens", "random", "constructive", VoteChoice::Both, n++));
  records.push_back(vote("aliens", "random", "random", VoteChoice::First, n++));
  auto t = tally_preferences(records);
  CHECK(t.at("Const vs Rnd", "aliens").text() == "9/10");
  CHECK(t.at("Search vs Rnd", "aliens").text() == "0/0");

  std::vector<VoteRecord> undecided;
  for (int i = 0; i < 6; ++i)
    undecided.push_back(vote("solarfox", "search", "random", i % 2 ? VoteChoice::Both : VoteChoice::Neither, i));
  auto u = tally_preferences(undecided);
  for (const auto& row : u.rows)
    for (const auto& g : u.games) CHECK(u.at(row, g).text() == "0/0");
  CHECK(u.rows == std::vector<std::string>{"Search vs Rnd", "Search vs Const", "Const vs Rnd"});
  CHECK(generator_label("search") == "Search");

  auto j = json::parse(t.json());
  CHECK(j["rows"][2]["pair"] == "Const vs Rnd");
  CHECK(j["rows"][2]["cells"][0]["text"] == "9/10");
  CHECK(t.text().find("Const vs Rnd\t9/10\t0/0\t0/0") != std::string::npos);
}

namespace {

struct Http {
  httplib::Client client;
  explicit Http(int port) : client("127.0.0.1", port) {}

  std::pair<int, json> post(const std::string& path, const json& body = json::object())
  {
    auto res = client.Post(path, body.dump(), "application/json");
    REQUIRE(res);
    return {res->status, json::parse(res->body)};
  }
  std::pair<int, json> get(const std::string& path)
  {
    auto res = client.Get(path);
    REQUIRE(res);
    return {res->status, json::parse(res->body)};
  }
};

namespace asio = boost::asio;
namespace beast = boost::beast;

struct WsClient {
  asio::io_context ioc;
  beast::websocket::stream<asio::ip::tcp::socket> ws{ioc};

  void connect(int port, const std::string& target)
  {
    asio::ip::tcp::resolver resolver(ioc);
    asio::connect(ws.next_layer(), resolver.resolve("127.0.0.1", std::to_string(port)));
    ws.handshake("127.0.0.1", target);
  }
  json send(const json& msg)
  {
    ws.write(asio::buffer(msg.dump()));
    beast::flat_buffer buf;
    ws.read(buf);
    return json::parse(beast::buffers_to_string(buf.data()));
  }
};

} // namespace

TEST_CASE("http and websocket service")
{
  auto dir = temp_dir("server");
  ArenaConfig config;
  config.port = 0;
  config.votes_file = dir / "votes.ndjson";
  config.seed = 5;
  ArenaServer server(config, pool_with({{"random", endless()}, {"search", endless()}}));
  server.start();
  REQUIRE(server.port() > 0);
  REQUIRE(server.ws_port() > 0);
  Http http(server.port());

  auto [created_status, created] = http.post("/sessions", {{"game", "aliens"}});
  CHECK(created_status == 201);
  std::string id = created["sessionId"];
  CHECK(created["wsPort"] == server.ws_port());

  CHECK(http.post("/sessions", {{"game", "zelda"}}).first == 404);
  CHECK(http.post("/sessions", {{"level", 1}}).first == 400);
  CHECK(http.get("/sessions/0123abcd").first == 404);

  auto [desc_status, desc] = http.get("/sessions/" + id);
  CHECK(desc_status == 200);
  CHECK(desc["games"].size() == 2);
  CHECK(desc.dump().find("random") == std::string::npos);
  CHECK(desc.dump().find("search") == std::string::npos);

  auto [vote_early, _] = http.post("/sessions/" + id + "/vote", {{"choice", "first"}});
  CHECK(vote_early == 409);

  auto [restart_status, restart] = http.post("/sessions/" + id + "/restart/0");
  CHECK(restart_status == 200);
  CHECK(restart["frame"] == 0);
  CHECK(http.post("/sessions/" + id + "/restart/7").first == 400);

  auto [step_status, step] = http.post("/sessions/" + id + "/step", {{"gameIndex", 0}, {"action", "LEFT"}});
  CHECK(step_status == 200);
  CHECK(step["frame"] == 1);
  CHECK(http.post("/sessions/" + id + "/step", {{"gameIndex", 0}}).first == 400);

  {
    WsClient ws;
    ws.connect(server.ws_port(), "/sessions/" + id);
    auto frame = ws.send({{"gameIndex", 1}, {"action", "NIL"}});
    CHECK(frame["frame"] == 1);
    CHECK(frame["grid"].size() == 11);
    auto err = ws.send({{"gameIndex", 1}, {"action", "FLY"}});
    CHECK(err["status"] == 400);
    auto again = ws.send({{"gameIndex", 1}, {"restart", true}});
    CHECK(again["frame"] == 0);

    // Sustained stepping: every reply is the next frame.
    const int n = 1500;
    auto start = std::chrono::steady_clock::now();
    bool contiguous = true;
    for (int i = 1; i <= n; ++i) {
      auto f = ws.send({{"gameIndex", 1}, {"action", i % 3 ? "LEFT" : "RIGHT"}});
      contiguous = contiguous && f["frame"] == i;
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    CHECK(contiguous);
    CHECK(n / secs > 25.0);
  }
  {
    WsClient ws;
    CHECK_THROWS(ws.connect(server.ws_port(), "/sessions/ffffffff"));
  }

  auto [vote_status, voted] = http.post("/sessions/" + id + "/vote", {{"choice", "second"}, {"comment", "livelier"}});
  CHECK(vote_status == 201);
  CHECK(voted["voteId"] == 1);
  CHECK(voted["generators"].size() == 2);
  CHECK(http.post("/sessions/" + id + "/vote", {{"choice", "first"}}).first == 409);
  CHECK(http.post("/sessions/" + id + "/vote", {{"choice", "maybe"}}).first == 400);

  auto [tally_status, tally] = http.get("/tally");
  CHECK(tally_status == 200);
  CHECK(tally["rows"][0]["pair"] == "Search vs Rnd");
  CHECK(tally["rows"][0]["cells"][0]["total"] == 1);

  auto bad = http.client.Post("/sessions", "{not json", "application/json");
  REQUIRE(bad);
  CHECK(bad->status == 400);

  server.stop();
  CHECK(server.votes().records().size() == 1);
  fs::remove_all(dir);
}
