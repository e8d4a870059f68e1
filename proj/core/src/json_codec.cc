// Copyright 2026 The Avalon Assassin Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "json_codec.h"

#include "avalon/error.h"

namespace avalon::internal {

namespace {

using nlohmann::json;

class Reader {
 public:
  explicit Reader(std::size_t line) : line_(line) {}

  [[noreturn]] void Fail(const std::string& field,
                         const std::string& what) const {
    std::string msg = "field '" + field + "': " + what;
    if (line_ > 0) msg = "line " + std::to_string(line_) + ": " + msg;
    throw SchemaError(line_, field, msg);
  }

  const json& Get(const json& obj, const std::string& key,
                  const std::string& path) const {
    if (!obj.is_object()) Fail(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) Fail(Join(path, key), "missing");
    return *it;
  }

  int Int(const json& v, const std::string& path) const {
    if (!v.is_number_integer()) Fail(path, "expected an integer");
    const auto x = v.get<long long>();
    if (x < -1000000 || x > 1000000) Fail(path, "integer out of range");
    return static_cast<int>(x);
  }

  bool Bool(const json& v, const std::string& path) const {
    if (!v.is_boolean()) Fail(path, "expected a boolean");
    return v.get<bool>();
  }

  std::string String(const json& v, const std::string& path) const {
    if (!v.is_string()) Fail(path, "expected a string");
    return v.get<std::string>();
  }

  const json& Array(const json& v, const std::string& path) const {
    if (!v.is_array()) Fail(path, "expected an array");
    return v;
  }

  std::vector<int> IntArray(const json& v, const std::string& path) const {
    std::vector<int> out;
    const json& arr = Array(v, path);
    for (std::size_t i = 0; i < arr.size(); ++i) {
      out.push_back(Int(arr[i], Index(path, i)));
    }
    return out;
  }

  static std::string Join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
  }
  static std::string Index(const std::string& path, std::size_t i) {
    return path + "[" + std::to_string(i) + "]";
  }

 private:
  std::size_t line_;
};

Proposal ReadProposal(const Reader& r, const json& j, const std::string& path) {
  Proposal p;
  p.leader = r.Int(r.Get(j, "leader", path), Reader::Join(path, "leader"));
  p.team = r.IntArray(r.Get(j, "team", path), Reader::Join(path, "team"));
  const std::string vpath = Reader::Join(path, "votes");
  const json& votes = r.Array(r.Get(j, "votes", path), vpath);
  if (votes.size() != static_cast<std::size_t>(kNumPlayers)) {
    r.Fail(vpath, "expected 5 votes");
  }
  for (std::size_t s = 0; s < votes.size(); ++s) {
    const std::string name = r.String(votes[s], Reader::Index(vpath, s));
    auto vote = ParseVote(name);
    if (!vote) r.Fail(Reader::Index(vpath, s), "unknown vote '" + name + "'");
    p.votes[s] = *vote;
  }
  p.approved =
      r.Bool(r.Get(j, "approved", path), Reader::Join(path, "approved"));
  return p;
}

std::vector<Mission> ReadMissions(const Reader& r, const json& j) {
  std::vector<Mission> out;
  const json& arr = r.Array(j, "missions");
  for (std::size_t m = 0; m < arr.size(); ++m) {
    const std::string path = Reader::Index("missions", m);
    const json& mj = arr[m];
    Mission mission;
    mission.index =
        r.Int(r.Get(mj, "index", path), Reader::Join(path, "index"));
    mission.team_size =
        r.Int(r.Get(mj, "team_size", path), Reader::Join(path, "team_size"));
    const std::string ppath = Reader::Join(path, "proposals");
    const json& props = r.Array(r.Get(mj, "proposals", path), ppath);
    for (std::size_t p = 0; p < props.size(); ++p) {
      mission.proposals.push_back(
          ReadProposal(r, props[p], Reader::Index(ppath, p)));
    }
    const json& fails = r.Get(mj, "fail_count", path);
    if (!fails.is_null()) {
      mission.fail_count = r.Int(fails, Reader::Join(path, "fail_count"));
    }
    const json& ok = r.Get(mj, "succeeded", path);
    if (!ok.is_null()) {
      mission.succeeded = r.Bool(ok, Reader::Join(path, "succeeded"));
    }
    out.push_back(std::move(mission));
  }
  return out;
}

}  // namespace

OrderedJson MissionsToJson(const std::vector<Mission>& missions) {
  OrderedJson arr = OrderedJson::array();
  for (const Mission& mission : missions) {
    OrderedJson mj;
    mj["index"] = mission.index;
    mj["team_size"] = mission.team_size;
    OrderedJson props = OrderedJson::array();
    for (const Proposal& p : mission.proposals) {
      OrderedJson pj;
      pj["leader"] = p.leader;
      pj["team"] = p.team;
      OrderedJson votes = OrderedJson::array();
      for (Vote v : p.votes) votes.push_back(std::string(VoteName(v)));
      pj["votes"] = std::move(votes);
      pj["approved"] = p.approved;
      props.push_back(std::move(pj));
    }
    mj["proposals"] = std::move(props);
    mj["fail_count"] = mission.fail_count.has_value()
                           ? OrderedJson(*mission.fail_count)
                           : OrderedJson(nullptr);
    mj["succeeded"] = mission.succeeded.has_value()
                          ? OrderedJson(*mission.succeeded)
                          : OrderedJson(nullptr);
    arr.push_back(std::move(mj));
  }
  return arr;
}

OrderedJson GameToJsonValue(const GameLog& log) {
  OrderedJson j;
  j["game_id"] = log.game_id;
  j["num_players"] = log.num_players;
  j["first_leader"] = log.first_leader;
  OrderedJson roles = OrderedJson::array();
  for (Role r : log.roles) roles.push_back(std::string(RoleName(r)));
  j["roles"] = std::move(roles);
  j["missions"] = MissionsToJson(log.missions);
  j["winner"] = std::string(SideName(log.winner));
  if (log.assassination.has_value()) {
    OrderedJson a;
    a["shooter"] = log.assassination->shooter;
    a["target"] = log.assassination->target;
    a["correct"] = log.assassination->correct;
    j["assassination"] = std::move(a);
  } else {
    j["assassination"] = nullptr;
  }
  return j;
}

OrderedJson ViewToJsonValue(const AssassinView& view) {
  OrderedJson j;
  j["spy_seats"] = view.spy_seats;
  j["first_leader"] = view.first_leader;
  j["missions"] = MissionsToJson(view.missions);
  return j;
}

GameLog GameFromJsonValue(const nlohmann::json& j, std::size_t line) {
  const Reader r(line);
  GameLog log;
  log.game_id = r.String(r.Get(j, "game_id", ""), "game_id");
  log.num_players = r.Int(r.Get(j, "num_players", ""), "num_players");
  if (log.num_players != kNumPlayers) {
    r.Fail("num_players", "only 5-player games are supported");
  }
  log.first_leader = r.Int(r.Get(j, "first_leader", ""), "first_leader");
  const json& roles = r.Array(r.Get(j, "roles", ""), "roles");
  if (roles.size() != static_cast<std::size_t>(kNumPlayers)) {
    r.Fail("roles", "expected 5 roles");
  }
  for (std::size_t s = 0; s < roles.size(); ++s) {
    const std::string name = r.String(roles[s], Reader::Index("roles", s));
    auto role = ParseRole(name);
    if (!role) r.Fail(Reader::Index("roles", s), "unknown role '" + name + "'");
    log.roles[s] = *role;
  }
  log.missions = ReadMissions(r, r.Get(j, "missions", ""));
  const std::string winner = r.String(r.Get(j, "winner", ""), "winner");
  auto side = ParseSide(winner);
  if (!side) r.Fail("winner", "unknown winner '" + winner + "'");
  log.winner = *side;
  const json& shot = r.Get(j, "assassination", "");
  if (!shot.is_null()) {
    Assassination a;
    a.shooter = r.Int(r.Get(shot, "shooter", "assassination"),
                      "assassination.shooter");
    a.target =
        r.Int(r.Get(shot, "target", "assassination"), "assassination.target");
    a.correct = r.Bool(r.Get(shot, "correct", "assassination"),
                       "assassination.correct");
    log.assassination = a;
  }
  return log;
}

AssassinView ViewFromJsonValue(const nlohmann::json& j, std::size_t line) {
  const Reader r(line);
  AssassinView view;
  view.spy_seats = r.IntArray(r.Get(j, "spy_seats", ""), "spy_seats");
  view.first_leader = r.Int(r.Get(j, "first_leader", ""), "first_leader");
  view.missions = ReadMissions(r, r.Get(j, "missions", ""));
  return view;
}

}  // namespace avalon::internal
