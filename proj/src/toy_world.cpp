#include "neoplanner/toy_world.hpp"

namespace neoplanner {

namespace {

constexpr const char* kInvalid = "No known action matches that input.";

}  // namespace

std::string ToyWorld::reset() {
  state_ = State{};
  return look();
}

std::string ToyWorld::look() const {
  std::string out;
  switch (state_.room) {
    case Room::kHallway: {
      const char* pantry = state_.pantry_open       ? "open"
                           : state_.pantry_unlocked ? "closed"
                                                    : "locked";
      out = "This room is called the hallway. In it, you see:\n"
            "\tthe agent\n"
            "You also see:\n"
            "\tA door to the kitchen (that is open)\n"
            "\tA door to the pantry (that is ";
      out += pantry;
      out += ")\n";
      break;
    }
    case Room::kKitchen:
      out = "This room is called the kitchen. In it, you see:\n"
            "\tthe agent\n";
      if (!state_.drawer_open) {
        out += "\ta drawer (that is closed)\n";
      } else if (!state_.key_carried) {
        out += "\ta drawer (that is open). In the drawer is: a key\n";
      } else {
        out += "\ta drawer (that is open). The drawer is empty\n";
      }
      out += "You also see:\n\tA door to the hallway (that is open)\n";
      break;
    case Room::kPantry:
      out = "This room is called the pantry. In it, you see:\n"
            "\tthe agent\n"
            "\ta shelf with jars of jam\n"
            "You also see:\n"
            "\tA door to the hallway (that is open)\n";
      break;
  }
  return out;
}

std::vector<std::string> ToyWorld::objects() const {
  std::vector<std::string> objs{"agent"};
  switch (state_.room) {
    case Room::kHallway:
      objs.insert(objs.end(), {"door to kitchen", "hallway", "kitchen", "pantry",
                               "pantry door"});
      break;
    case Room::kKitchen:
      objs.insert(objs.end(), {"door to hallway", "drawer", "hallway", "kitchen"});
      if (state_.drawer_open && !state_.key_carried) objs.push_back("key");
      break;
    case Room::kPantry:
      objs.insert(objs.end(), {"door to hallway", "hallway", "pantry", "shelf"});
      break;
  }
  if (state_.key_carried) objs.push_back("key");
  return objs;
}

StepResult ToyWorld::step(const std::string& action) {
  State& s = state_;
  auto ok = [&](std::string obs, double reward = 0.0) {
    s.cumulative_reward += reward;
    if (s.cumulative_reward >= 1.0) s.done = true;
    return StepResult{std::move(obs), reward, s.done, true};
  };

  if (action == "look around") return ok(look());
  if (action == "inventory") return ok(inventory());

  switch (s.room) {
    case Room::kHallway:
      if (action == "go kitchen") {
        s.room = Room::kKitchen;
        const double reward = s.kitchen_entered ? 0.0 : 0.25;
        s.kitchen_entered = true;
        return ok("You move to the kitchen.", reward);
      }
      if (action == "go pantry" && s.pantry_open) {
        s.room = Room::kPantry;
        return ok("You move to the pantry.");
      }
      if (action == "use key on pantry door" && s.key_carried) {
        if (s.pantry_unlocked) return ok("The pantry door is already unlocked.");
        s.pantry_unlocked = true;
        return ok("You unlock the pantry door with the key.");
      }
      if (action == "open pantry door") {
        if (!s.pantry_unlocked) return ok("The pantry door is locked.");
        if (s.pantry_open) return ok("The pantry door is already open.");
        s.pantry_open = true;
        return ok("The pantry door is now open.", 0.5);
      }
      break;
    case Room::kKitchen:
      if (action == "go hallway") {
        s.room = Room::kHallway;
        return ok("You move to the hallway.");
      }
      if (action == "open drawer") {
        if (s.drawer_open) return ok("The drawer is already open.");
        s.drawer_open = true;
        return ok("The drawer is now open.");
      }
      if (action == "pick up key" && s.drawer_open && !s.key_carried) {
        s.key_carried = true;
        return ok("You move the key to the inventory.", 0.25);
      }
      break;
    case Room::kPantry:
      if (action == "go hallway") {
        s.room = Room::kHallway;
        return ok("You move to the hallway.");
      }
      break;
  }
  return StepResult{kInvalid, 0.0, s.done, false};
}

TaskDescription ToyWorld::describe() {
  return {
      "Your task is to unlock and open the pantry door. The key is somewhere in "
      "the kitchen.",
      "an agent situated in a small house with a hallway, a kitchen and a pantry. "
      "Generate a sequence of actions to meet the objective.\n"
      "Do not make up new actions or objects. DO NOT TAKE ANY ACTION ON ANY OBJECT "
      "that is NOT IN ACCESSIBLE OBJECTS in CURRENT STATE.\n"
      "Here are the allowed actions, where OBJ should be replaced by an object from "
      "the current state:\n"
      "['go OBJ', 'open OBJ', 'pick up OBJ', 'use OBJ on OBJ', 'look around', "
      "'inventory']"};
}

std::vector<std::string> ToyWorld::accessible_objects() { return objects(); }

std::vector<std::string> ToyWorld::action_templates() {
  return {"go OBJ", "open OBJ", "pick up OBJ", "use OBJ on OBJ", "look around",
          "inventory"};
}

std::string ToyWorld::inventory() {
  return state_.key_carried ? "In your inventory, you see:\n\ta key\n"
                            : "In your inventory, you see:\n\tnothing\n";
}

}  // namespace neoplanner
