"""
时钟滴答数的相对论与热力学上限
质量上限、黑洞时钟、热力学上限与 Planck 时钟，全部使用 SI 单位

每个量同时给出两种口径：
- literal：数量级表达式，省略 O(1) 因子（GM²/ħc、k_B T_H ~ ħc³/GM）
- exact：标准 Schwarzschild 公式（4π、8π、5120π）
"""

import logging
import math
from dataclasses import asdict, dataclass
from typing import Any, Dict, NamedTuple, Optional

from pydantic import BaseModel, ConfigDict, PositiveFloat, ValidationError

from src.core.errors import MissingField, NonPositiveInputs, NonPositiveMass

logger = logging.getLogger(__name__)


class PhysicalConstants(BaseModel):
    """CODATA-2018 推荐值，运行时不查询、不修改"""

    model_config = ConfigDict(frozen=True)

    c: float = 299792458.0            # m/s（定义值）
    G: float = 6.67430e-11            # m³ kg⁻¹ s⁻²
    hbar: float = 1.054571817e-34     # J·s
    k_B: float = 1.380649e-23         # J/K（定义值）


CODATA_2018 = PhysicalConstants()


class ClockBudget(BaseModel):
    """时钟资源：质量、分辨率，以及可选的运行时间、能量、温度"""

    model_config = ConfigDict(frozen=True)

    mass: Optional[PositiveFloat] = None           # kg
    resolution: Optional[PositiveFloat] = None     # s
    run_time: Optional[PositiveFloat] = None       # s
    energy: Optional[PositiveFloat] = None         # J
    temperature: Optional[PositiveFloat] = None    # K

    def __init__(self, **data: Any):
        try:
            super().__init__(**data)
        except ValidationError as exc:
            fields = ", ".join(str(err["loc"][0]) for err in exc.errors())
            raise NonPositiveInputs(f"ClockBudget 字段必须为正: {fields}") from exc

    def require(self, *names: str) -> None:
        missing = [name for name in names if getattr(self, name) is None]
        if missing:
            raise MissingField(f"ClockBudget 缺少字段: {', '.join(missing)}", {"missing": missing})


@dataclass(frozen=True)
class BlackHoleClock:
    """cτ = r_S 的黑洞时钟"""

    mass: float                          # kg
    schwarzschild_radius: float          # m
    resolution: float                    # s
    hawking_temperature: float           # K，ħc³/(8πGMk_B)
    hawking_temperature_literal: float   # K，ħc³/(GMk_B)
    entropy_exact: float                 # S_BH/k_B = 4πGM²/(ħc)
    ticks_order_of_magnitude: float      # GM²/(ħc)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass(frozen=True)
class BoundConsistency:
    """质量上限在 cτ = r_S 处与黑洞滴答数的比较"""

    mass: float
    resolution: float
    mass_bound: float                    # Mc²τ/ħ at τ = r_S/c
    ticks_order_of_magnitude: float      # GM²/(ħc)
    ratio: float                         # 恒为 2
    thermodynamic_exact: float           # Mc²/(k_B T_H) = 8πGM²/(ħc)
    thermodynamic_literal: float         # Mc²/(k_B T_H^literal) = GM²/(ħc)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


class PlanckClock(NamedTuple):
    mass: float
    time: float
    ticks: float


class PlanckUnits(NamedTuple):
    mass: float
    time: float
    length: float
    temperature: float


@dataclass(frozen=True)
class BudgetVerdict:
    """evaluate_budget 的结果；输入不足时对应字段为 None"""

    requested_ticks: Optional[float]
    mass_bound: Optional[float]
    thermodynamic_bound: Optional[float]
    detector_temperature_limit: Optional[float]
    detector_cold_enough: Optional[bool]
    required_energy: Optional[float]
    admissible: Optional[bool]

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def _check_mass(mass: float) -> float:
    if not (mass > 0) or not math.isfinite(mass):
        raise NonPositiveMass(f"质量必须为有限正数, got {mass!r}")
    return float(mass)


def _check_positive(**values: float) -> None:
    bad = [name for name, value in values.items() if not (value > 0) or not math.isfinite(value)]
    if bad:
        raise NonPositiveInputs(f"输入必须为有限正数: {', '.join(bad)}")


def max_ticks_mass_bound(budget: ClockBudget, constants: PhysicalConstants = CODATA_2018) -> float:
    """n_ticks ≤ Mc²/(ħτ⁻¹) = Mc²τ/ħ"""
    budget.require("mass", "resolution")
    return budget.mass * constants.c ** 2 * budget.resolution / constants.hbar


def schwarzschild_radius(mass: float, constants: PhysicalConstants = CODATA_2018) -> float:
    """r_S = 2GM/c²"""
    return 2.0 * constants.G * _check_mass(mass) / constants.c ** 2


def black_hole_clock(mass: float, constants: PhysicalConstants = CODATA_2018) -> BlackHoleClock:
    mass = _check_mass(mass)
    c, G, hbar, k_B = constants.c, constants.G, constants.hbar, constants.k_B
    r_s = schwarzschild_radius(mass, constants)
    return BlackHoleClock(
        mass=mass,
        schwarzschild_radius=r_s,
        resolution=r_s / c,
        hawking_temperature=hbar * c ** 3 / (8.0 * math.pi * G * mass * k_B),
        hawking_temperature_literal=hbar * c ** 3 / (G * mass * k_B),
        entropy_exact=4.0 * math.pi * G * mass ** 2 / (hbar * c),
        ticks_order_of_magnitude=G * mass ** 2 / (hbar * c),
    )


def thermodynamic_tick_bound(energy: float, temperature: float,
                             constants: PhysicalConstants = CODATA_2018) -> float:
    """n_ticks ≤ E/(k_B T)"""
    _check_positive(energy=energy, temperature=temperature)
    return energy / (constants.k_B * temperature)


def bound_consistency(mass: float, constants: PhysicalConstants = CODATA_2018) -> BoundConsistency:
    """
    在 cτ = r_S 处计算质量上限，并与 GM²/(ħc) 比较

    Mc²·(2GM/c³)/ħ = 2GM²/(ħc)，比值对任意质量都是 2
    """
    clock = black_hole_clock(mass, constants)
    mass_bound = max_ticks_mass_bound(ClockBudget(mass=clock.mass, resolution=clock.resolution), constants)
    rest_energy = clock.mass * constants.c ** 2
    return BoundConsistency(
        mass=clock.mass,
        resolution=clock.resolution,
        mass_bound=mass_bound,
        ticks_order_of_magnitude=clock.ticks_order_of_magnitude,
        ratio=mass_bound / clock.ticks_order_of_magnitude,
        thermodynamic_exact=thermodynamic_tick_bound(rest_energy, clock.hawking_temperature, constants),
        thermodynamic_literal=thermodynamic_tick_bound(rest_energy, clock.hawking_temperature_literal, constants),
    )


def planck_units(constants: PhysicalConstants = CODATA_2018) -> PlanckUnits:
    c, G, hbar = constants.c, constants.G, constants.hbar
    mass = math.sqrt(hbar * c / G)
    return PlanckUnits(
        mass=mass,
        time=math.sqrt(hbar * G / c ** 5),
        length=math.sqrt(hbar * G / c ** 3),
        temperature=mass * c ** 2 / constants.k_B,
    )


def planck_clock(constants: PhysicalConstants = CODATA_2018) -> PlanckClock:
    """最快的时钟：Planck 质量黑洞，只滴答一次"""
    units = planck_units(constants)
    ticks = black_hole_clock(units.mass, constants).ticks_order_of_magnitude
    return PlanckClock(mass=units.mass, time=units.time, ticks=ticks)


def evaporation_time(mass: float, constants: PhysicalConstants = CODATA_2018) -> float:
    """
    Hawking 蒸发时间 5120π G²M³/(ħc⁴)

    Planck 质量时约为 1.6e4 个 Planck 时间，只在对数意义上是"Planck 时间量级"
    """
    mass = _check_mass(mass)
    return 5120.0 * math.pi * constants.G ** 2 * mass ** 3 / (constants.hbar * constants.c ** 4)


def tick_energy(resolution: float, constants: PhysicalConstants = CODATA_2018) -> float:
    """每次滴答所需能量 ħ/τ"""
    _check_positive(resolution=resolution)
    return constants.hbar / resolution


def minimum_clock_energy(n_ticks: float, resolution: float,
                         constants: PhysicalConstants = CODATA_2018) -> float:
    """E ≥ n_ticks·ħ/τ"""
    _check_positive(n_ticks=n_ticks)
    return n_ticks * tick_energy(resolution, constants)


def detector_temperature_limit(resolution: float, constants: PhysicalConstants = CODATA_2018) -> float:
    """探测器可靠读数要求 k_B T ≤ ħ/τ"""
    return tick_energy(resolution, constants) / constants.k_B


def quantum_diffusion_spread(mass: float, initial_spread: float, run_time: float,
                             constants: PhysicalConstants = CODATA_2018) -> float:
    """初始位置弥散 λ 的时钟运行 t 后的量子扩散 ħt/(Mλ)"""
    _check_mass(mass)
    _check_positive(initial_spread=initial_spread, run_time=run_time)
    return constants.hbar * run_time / (mass * initial_spread)


def evaluate_budget(budget: ClockBudget, constants: PhysicalConstants = CODATA_2018) -> BudgetVerdict:
    """
    计算 budget 中输入齐全的各项上限，并判断请求的 t/τ 次滴答是否可行
    """
    requested = None
    if budget.run_time is not None and budget.resolution is not None:
        requested = budget.run_time / budget.resolution

    mass_bound = None
    if budget.mass is not None and budget.resolution is not None:
        mass_bound = max_ticks_mass_bound(budget, constants)

    thermo_bound = None
    if budget.energy is not None and budget.temperature is not None:
        thermo_bound = thermodynamic_tick_bound(budget.energy, budget.temperature, constants)

    limit = cold_enough = required_energy = None
    if budget.resolution is not None:
        limit = detector_temperature_limit(budget.resolution, constants)
        if budget.temperature is not None:
            cold_enough = budget.temperature <= limit
        if requested is not None:
            required_energy = minimum_clock_energy(requested, budget.resolution, constants)

    admissible = None
    available = [bound for bound in (mass_bound, thermo_bound) if bound is not None]
    if requested is not None and available:
        admissible = all(requested <= bound for bound in available)
        if cold_enough is False:
            admissible = False
        if required_energy is not None and budget.energy is not None and budget.energy < required_energy:
            admissible = False
    logger.debug(f"budget verdict: requested={requested} bounds={available} admissible={admissible}")

    return BudgetVerdict(
        requested_ticks=requested,
        mass_bound=mass_bound,
        thermodynamic_bound=thermo_bound,
        detector_temperature_limit=limit,
        detector_cold_enough=cold_enough,
        required_energy=required_energy,
        admissible=admissible,
    )
