#pragma once

#include <span>
#include <vector>

namespace polybarrier {

/// Euclidean projection onto {w : ||w||_1 <= B} by the sort-and-threshold
/// rule. Returns v unchanged when it is already inside the ball.
std::vector<double> l1_ball_projection(std::span<const double> v, double B);

/// In-place projection onto the Euclidean ball of radius r.
void project_to_l2_ball(std::span<double> v, double r);

}  // namespace polybarrier
