// SPDX-License-Identifier: BSD-3-Clause
// Copyright (c) 2026 ltr authors
//
// Desk-scale manipulation world: a planar workspace with static obstacles,
// movable objects and a robot whose collision geometry changes when it holds
// an object. World values are immutable; pick/place return new worlds.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ltr/config.hpp"
#include "ltr/geometry.hpp"

namespace ltr {

/// Distance tolerance for "robot reference point at object pose".
inline constexpr double kGraspTolerance = 1e-6;

enum class RobotKind { point, disc, planar_arm };

struct RobotModel {
    RobotKind kind{RobotKind::point};
    double radius{0};              // disc robots
    std::vector<double> links;     // planar arms, 2..4 links
    geom::Pose base;               // planar arms

    void validate() const;
    [[nodiscard]] std::size_t dim() const noexcept;
    /// Planar-arm joint positions, base first, end-effector last.
    [[nodiscard]] std::vector<geom::Vec2> joint_positions(const Config& q) const;
    /// End-effector for arms, (q0, q1) otherwise.
    [[nodiscard]] geom::Vec2 reference_point(const Config& q) const;
    /// End-effector heading for arms, 0 otherwise.
    [[nodiscard]] double reference_angle(const Config& q) const;
};

struct WorldObject {
    std::string id;
    geom::Shape shape;
    geom::Pose pose;
};

struct StaticObstacle {
    geom::Shape shape;
    geom::Pose pose;
};

struct Task {
    std::string object_id;
    geom::Pose target;
};

struct Workspace {
    geom::Vec2 lower;
    geom::Vec2 upper;
};

class World {
public:
    World(Workspace workspace, std::vector<StaticObstacle> statics, std::vector<WorldObject> objects,
          RobotModel robot);

    [[nodiscard]] const Workspace& workspace() const noexcept { return workspace_; }
    [[nodiscard]] const RobotModel& robot() const noexcept { return robot_; }
    [[nodiscard]] const std::vector<StaticObstacle>& static_obstacles() const noexcept { return statics_; }
    [[nodiscard]] const std::vector<WorldObject>& objects() const noexcept { return objects_; }
    [[nodiscard]] const std::optional<std::string>& attached() const noexcept { return attached_; }
    [[nodiscard]] const std::vector<std::string>& allowed_contacts() const noexcept { return allowed_contacts_; }
    [[nodiscard]] const WorldObject& object(const std::string& id) const;
    [[nodiscard]] bool has_object(const std::string& id) const noexcept;

    /// Configuration-space box: the workspace for point/disc robots, [-pi, pi]^d for arms.
    [[nodiscard]] SpaceBounds config_bounds() const;

    /// Membership in C_free.
    [[nodiscard]] bool config_valid(const Config& q) const;

    /// Same world, but the robot body may touch object `id`: the object it is
    /// about to grasp, or the one it has just released. Held objects still
    /// collide with it. Cleared by pick and place.
    [[nodiscard]] World allowing_contact(const std::string& id) const;

    /// Pose of the held object when the robot is at q.
    [[nodiscard]] std::optional<geom::Pose> attached_pose(const Config& q) const;

    friend World apply_pick(const World& world, const std::string& object_id, const Config& q);
    friend World apply_place(const World& world, const geom::Pose& target, const Config& q);

private:
    void rebuild_cache();
    [[nodiscard]] bool robot_clear(const Config& q) const;

    Workspace workspace_;
    std::vector<StaticObstacle> statics_;
    std::vector<WorldObject> objects_;
    RobotModel robot_;
    std::optional<std::string> attached_;
    double attach_offset_{0};
    std::vector<std::string> allowed_contacts_;

    // Obstacles the robot must avoid in the current state.
    std::vector<geom::PlacedShape> blockers_;
    std::vector<std::uint8_t> robot_may_touch_;  // per blockers_ entry
    std::optional<geom::Shape> held_shape_;
    SpaceBounds bounds_;
};

/// Attaches `object_id`; the robot at q must be at the object (kGraspTolerance).
[[nodiscard]] World apply_pick(const World& world, const std::string& object_id, const Config& q);
/// Releases the held object at `target`; the robot at q must be at target.
[[nodiscard]] World apply_place(const World& world, const geom::Pose& target, const Config& q);

/// Deterministic single-branch inverse kinematics placing the robot reference
/// point at `pose`. Throws NoGraspConfig when out of reach. No validity check.
[[nodiscard]] Config reach_config(const RobotModel& robot, const geom::Pose& pose);

/// The grasp mapping f_q: a valid configuration at the object's pose.
/// Validity is checked with contact against the object itself allowed (or with
/// the object held, when it is the attached one). Throws NoGraspConfig.
[[nodiscard]] Config grasp_config(const WorldObject& object, const World& world);

/// Validity of many probes at once; OpenMP-parallel over probes.
[[nodiscard]] std::vector<std::uint8_t> validity_map(const World& world, std::span<const Config> probes);
/// Serial reference for validity_map.
[[nodiscard]] std::vector<std::uint8_t> validity_map_serial(const World& world, std::span<const Config> probes);

}  // namespace ltr
