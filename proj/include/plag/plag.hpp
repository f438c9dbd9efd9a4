#pragma once

#include <plag/config.hpp>
#include <plag/core.hpp>
#include <plag/diagnostics.hpp>
#include <plag/iterate.hpp>
#include <plag/numcheck.hpp>
#include <plag/plagrangian.hpp>
#include <plag/problem.hpp>
#include <plag/problems.hpp>
#include <plag/projection.hpp>
#include <plag/qcqp_io.hpp>
#include <plag/runner.hpp>
#include <plag/solver.hpp>
#include <plag/trace_csv.hpp>
