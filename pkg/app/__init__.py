"""
PF Bound
shelling 으로 조립한 단체 메쉬 위 Poincare-Friedrichs 상수 상한 계산기와 FEEC 기준값
"""

__version__ = "0.1.0"
