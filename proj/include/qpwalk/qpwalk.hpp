#ifndef QPWALK_QPWALK_HPP
#define QPWALK_QPWALK_HPP

#include <qpwalk/error.hpp>
#include <qpwalk/rational.hpp>
#include <qpwalk/series.hpp>
#include <qpwalk/walk_dp.hpp>
#include <qpwalk/compensation.hpp>
#include <qpwalk/variants.hpp>
#include <qpwalk/asymptotics.hpp>
#include <qpwalk/verify.hpp>

#endif // QPWALK_QPWALK_HPP
