// SPDX-License-Identifier: BSD-3-Clause
// Copyright (c) 2026 ltr authors

#include "ltr/world.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ltr/errors.hpp"

namespace ltr {

namespace {

double wrap_angle(double a) {
    a = std::remainder(a, 2.0 * std::numbers::pi);
    return a;
}

bool inside(geom::Vec2 p, const Workspace& ws) noexcept {
    return p.x >= ws.lower.x && p.x <= ws.upper.x && p.y >= ws.lower.y && p.y <= ws.upper.y;
}

}  // namespace

void RobotModel::validate() const {
    switch (kind) {
    case RobotKind::point:
        break;
    case RobotKind::disc:
        require(radius > 0.0, "robot: disc radius must be positive");
        break;
    case RobotKind::planar_arm:
        require(links.size() >= 2 && links.size() <= 4, "robot: planar_arm needs 2..4 links");
        for (double l : links) {
            require(l > 0.0, "robot: link lengths must be positive");
        }
        break;
    }
}

std::size_t RobotModel::dim() const noexcept {
    return kind == RobotKind::planar_arm ? links.size() : 2;
}

std::vector<geom::Vec2> RobotModel::joint_positions(const Config& q) const {
    std::vector<geom::Vec2> pts;
    pts.reserve(links.size() + 1);
    geom::Vec2 p = base.position();
    double heading = base.theta;
    pts.push_back(p);
    for (std::size_t i = 0; i < links.size(); ++i) {
        heading += q[i];
        p = p + links[i] * geom::Vec2{std::cos(heading), std::sin(heading)};
        pts.push_back(p);
    }
    return pts;
}

geom::Vec2 RobotModel::reference_point(const Config& q) const {
    if (kind == RobotKind::planar_arm) {
        return joint_positions(q).back();
    }
    return {q[0], q[1]};
}

double RobotModel::reference_angle(const Config& q) const {
    if (kind != RobotKind::planar_arm) {
        return 0.0;
    }
    double heading = base.theta;
    for (std::size_t i = 0; i < links.size(); ++i) {
        heading += q[i];
    }
    return heading;
}

World::World(Workspace workspace, std::vector<StaticObstacle> statics, std::vector<WorldObject> objects,
             RobotModel robot)
    : workspace_(workspace), statics_(std::move(statics)), objects_(std::move(objects)), robot_(std::move(robot)) {
    require(workspace_.lower.x < workspace_.upper.x && workspace_.lower.y < workspace_.upper.y,
            "world: workspace lower must be below upper");
    robot_.validate();
    for (auto& s : statics_) {
        geom::normalize(s.shape);
    }
    for (std::size_t i = 0; i < objects_.size(); ++i) {
        geom::normalize(objects_[i].shape);
        require(inside(objects_[i].pose.position(), workspace_), "world: object pose outside workspace");
        for (std::size_t j = 0; j < i; ++j) {
            require(objects_[j].id != objects_[i].id, "world: duplicate object id " + objects_[i].id);
        }
    }
    rebuild_cache();
}

const WorldObject& World::object(const std::string& id) const {
    for (const auto& o : objects_) {
        if (o.id == id) {
            return o;
        }
    }
    throw ContractViolation("world: unknown object " + id);
}

bool World::has_object(const std::string& id) const noexcept {
    for (const auto& o : objects_) {
        if (o.id == id) {
            return true;
        }
    }
    return false;
}

SpaceBounds World::config_bounds() const {
    return bounds_;
}

void World::rebuild_cache() {
    if (robot_.kind == RobotKind::planar_arm) {
        bounds_ = {std::vector<double>(robot_.dim(), -std::numbers::pi),
                   std::vector<double>(robot_.dim(), std::numbers::pi)};
    } else {
        bounds_ = {{workspace_.lower.x, workspace_.lower.y}, {workspace_.upper.x, workspace_.upper.y}};
    }
    blockers_.clear();
    for (const auto& s : statics_) {
        blockers_.push_back(geom::place(s.shape, s.pose));
    }
    robot_may_touch_.assign(blockers_.size(), 0);
    held_shape_.reset();
    for (const auto& o : objects_) {
        if (attached_ && *attached_ == o.id) {
            held_shape_ = o.shape;
            continue;
        }
        const bool touch =
            std::find(allowed_contacts_.begin(), allowed_contacts_.end(), o.id) != allowed_contacts_.end();
        blockers_.push_back(geom::place(o.shape, o.pose));
        robot_may_touch_.push_back(touch ? 1 : 0);
    }
}

bool World::robot_clear(const Config& q) const {
    switch (robot_.kind) {
    case RobotKind::point: {
        const geom::Vec2 p{q[0], q[1]};
        for (std::size_t i = 0; i < blockers_.size(); ++i) {
            if (!robot_may_touch_[i] && geom::point_hits(p, blockers_[i])) {
                return false;
            }
        }
        return true;
    }
    case RobotKind::disc: {
        const geom::Vec2 c{q[0], q[1]};
        const double r = robot_.radius;
        if (c.x - r < workspace_.lower.x || c.x + r > workspace_.upper.x || c.y - r < workspace_.lower.y ||
            c.y + r > workspace_.upper.y) {
            return false;
        }
        for (std::size_t i = 0; i < blockers_.size(); ++i) {
            if (!robot_may_touch_[i] && geom::disc_hits(c, r, blockers_[i])) {
                return false;
            }
        }
        return true;
    }
    case RobotKind::planar_arm: {
        const auto joints = robot_.joint_positions(q);
        for (const auto& p : joints) {
            if (!inside(p, workspace_)) {
                return false;
            }
        }
        for (std::size_t l = 0; l + 1 < joints.size(); ++l) {
            for (std::size_t i = 0; i < blockers_.size(); ++i) {
                if (!robot_may_touch_[i] && geom::segment_hits(joints[l], joints[l + 1], blockers_[i])) {
                    return false;
                }
            }
        }
        return true;
    }
    }
    return false;
}

std::optional<geom::Pose> World::attached_pose(const Config& q) const {
    if (!attached_) {
        return std::nullopt;
    }
    const geom::Vec2 p = robot_.reference_point(q);
    return geom::Pose{p.x, p.y, robot_.reference_angle(q) + attach_offset_};
}

bool World::config_valid(const Config& q) const {
    require(q.dim() == robot_.dim(), "config_valid: dimension does not match robot");
    if (!bounds_.contains(q)) {
        return false;
    }
    if (!robot_clear(q)) {
        return false;
    }
    if (held_shape_) {
        const auto held = geom::place(*held_shape_, *attached_pose(q));
        if (!geom::inside_rect(held, workspace_.lower, workspace_.upper)) {
            return false;
        }
        for (const auto& b : blockers_) {
            if (geom::shapes_intersect(held, b)) {
                return false;
            }
        }
    }
    return true;
}

World World::allowing_contact(const std::string& id) const {
    require(has_object(id), "allowing_contact: unknown object " + id);
    World w = *this;
    if (std::find(w.allowed_contacts_.begin(), w.allowed_contacts_.end(), id) == w.allowed_contacts_.end()) {
        w.allowed_contacts_.push_back(id);
    }
    w.rebuild_cache();
    return w;
}

World apply_pick(const World& world, const std::string& object_id, const Config& q) {
    require(!world.attached_, "apply_pick: an object is already attached");
    const WorldObject& obj = world.object(object_id);
    const geom::Vec2 ref = world.robot_.reference_point(q);
    require(geom::norm(ref - obj.pose.position()) <= kGraspTolerance, "apply_pick: robot is not at the object");
    World w = world;
    w.attached_ = object_id;
    w.attach_offset_ = obj.pose.theta - world.robot_.reference_angle(q);
    w.allowed_contacts_.clear();
    w.rebuild_cache();
    return w;
}

World apply_place(const World& world, const geom::Pose& target, const Config& q) {
    require(world.attached_.has_value(), "apply_place: nothing attached");
    const geom::Vec2 ref = world.robot_.reference_point(q);
    require(geom::norm(ref - target.position()) <= kGraspTolerance, "apply_place: robot is not at the target pose");
    require(inside(target.position(), world.workspace_), "apply_place: target outside workspace");
    World w = world;
    for (auto& o : w.objects_) {
        if (o.id == *w.attached_) {
            o.pose = target;
        }
    }
    w.attached_.reset();
    w.attach_offset_ = 0.0;
    w.allowed_contacts_.clear();
    w.rebuild_cache();
    return w;
}

Config reach_config(const RobotModel& robot, const geom::Pose& pose) {
    if (robot.kind != RobotKind::planar_arm) {
        return Config{pose.x, pose.y};
    }
    const auto& l = robot.links;
    const geom::Vec2 rel = pose.position() - robot.base.position();
    double tail = 0.0;
    for (std::size_t i = 2; i < l.size(); ++i) {
        tail += l[i];
    }
    // Trailing links point radially away from the base; the first two solve
    // the wrist position with the positive-elbow branch.
    const double heading = std::atan2(rel.y, rel.x);
    const geom::Vec2 wrist_world = rel - tail * geom::Vec2{std::cos(heading), std::sin(heading)};
    const double c0 = std::cos(-robot.base.theta), s0 = std::sin(-robot.base.theta);
    const geom::Vec2 wrist{c0 * wrist_world.x - s0 * wrist_world.y, s0 * wrist_world.x + c0 * wrist_world.y};
    const double r2 = geom::dot(wrist, wrist);
    double c2 = (r2 - l[0] * l[0] - l[1] * l[1]) / (2.0 * l[0] * l[1]);
    if (c2 > 1.0 + 1e-12 || c2 < -1.0 - 1e-12) {
        throw NoGraspConfig("grasp: pose out of reach");
    }
    c2 = std::clamp(c2, -1.0, 1.0);
    const double q2 = std::acos(c2);
    const double q1 = std::atan2(wrist.y, wrist.x) - std::atan2(l[1] * std::sin(q2), l[0] + l[1] * c2);
    Config q(l.size());
    q[0] = wrap_angle(q1);
    q[1] = wrap_angle(q2);
    if (l.size() > 2) {
        q[2] = wrap_angle(heading - robot.base.theta - q1 - q2);
    }
    const geom::Vec2 ee = robot.reference_point(q);
    if (geom::norm(ee - pose.position()) > kGraspTolerance) {
        throw NoGraspConfig("grasp: inverse kinematics did not reach the pose");
    }
    return q;
}

Config grasp_config(const WorldObject& object, const World& world) {
    Config q = reach_config(world.robot(), object.pose);
    const bool held = world.attached() && *world.attached() == object.id;
    const bool known = world.has_object(object.id);
    const bool ok = (held || !known) ? world.config_valid(q) : world.allowing_contact(object.id).config_valid(q);
    if (!ok) {
        throw NoGraspConfig("grasp: configuration for " + object.id + " is in collision");
    }
    return q;
}

std::vector<std::uint8_t> validity_map(const World& world, std::span<const Config> probes) {
    std::vector<std::uint8_t> out(probes.size());
    const auto n = static_cast<std::int64_t>(probes.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] = world.config_valid(probes[static_cast<std::size_t>(i)]) ? 1 : 0;
    }
    return out;
}

std::vector<std::uint8_t> validity_map_serial(const World& world, std::span<const Config> probes) {
    std::vector<std::uint8_t> out(probes.size());
    for (std::size_t i = 0; i < probes.size(); ++i) {
        out[i] = world.config_valid(probes[i]) ? 1 : 0;
    }
    return out;
}

}  // namespace ltr
