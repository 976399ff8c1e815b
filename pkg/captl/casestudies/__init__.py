"""
    captl.casestudies
    ~~~~~~~~~~~~~~~~~

    Parameterized generators for the robot task planner and the MEDA
    biochip scheduler.
"""
from captl.casestudies.meda import MedaParams, build_meda, gen_meda
from captl.casestudies.robot import RobotParams, build_robot, gen_robot


GENERATORS = {
    'robot': (RobotParams, gen_robot),
    'meda': (MedaParams, gen_meda),
}


__all__ = ['MedaParams', 'build_meda', 'gen_meda', 'RobotParams',
           'build_robot', 'gen_robot', 'GENERATORS']
