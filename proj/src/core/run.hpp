#pragma once
namespace cnb {}
