#pragma once

#include "navsim/vec2.hpp"

namespace navsim {

struct RobotState {
  Vec2 position;  // m
  Vec2 velocity;  // m/s
  double time{0.0};
};

}  // namespace navsim
