#pragma once

#include <flatrank/field.hpp>
#include <flatrank/generators.hpp>
#include <flatrank/io.hpp>
#include <flatrank/koszul.hpp>
#include <flatrank/matrix.hpp>
#include <flatrank/rank.hpp>
#include <flatrank/report.hpp>
#include <flatrank/tensor.hpp>
#include <flatrank/verify.hpp>
