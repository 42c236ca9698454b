"""Independent prototype of the frozen-coefficient series solver for the
paper_example problem. Every interval is integrated with scipy's DOP853 at
rtol 1e-12, all series terms at once as one augmented system. Prints the sup
errors of the partial sums against (sin t, cos t) on [0, 6].

    python3 fd_prototype.py 0.2 4
"""
import numpy as np, sys
from scipy.integrate import solve_ivp
E=np.eye(2); D1=np.diag([0.,1.]); D2=np.diag([1.,0.])
def smul(a,b,n): return [sum(a[i]*b[k-i] for i in range(k+1)) for k in range(n+1)]
def Amat(vs,k):
    # tau^k coefficient of N(sum tau^i v_i), N = -E + u1 D1 + u2 D2 - |u|^2 E
    s1=[v[0] for v in vs]+[0.0]*(k+1-len(vs)); s2=[v[1] for v in vs]+[0.0]*(k+1-len(vs))
    s1=s1[:k+1]; s2=s2[:k+1]
    sq=[x+y for x,y in zip(smul(s1,s1,k),smul(s2,s2,k))]
    c=(-1.0 if k==0 else 0.0)
    return c*E + s1[k]*D1 + s2[k]*D2 - sq[k]*E
def Nm(u): return Amat([u],0)
def dN(u,p): return (np.diag([0.,1.])-2*u[0]*E) if p==0 else (np.diag([1.,0.])-2*u[1]*E)
def phi(t): return np.array([2*np.sin(t)-0.5*np.sin(2*t)+np.cos(t), 2*np.cos(t)-0.5*np.sin(2*t)-np.sin(t)])
def fd(h,T,P,samples=33):
    n=int(round(T/h)); left=[np.array([0.,1.])]+[np.zeros(2)]*P
    ts_all=[];us_all=[]
    for i in range(n):
        a,b=i*h,(i+1)*h
        c=[x.copy() for x in left]
        Nc=Nm(c[0])
        def rhs(t,y):
            u=[y[2*q:2*q+2] for q in range(P+1)]
            out=[Nc@u[0]+phi(t)]
            Ups=np.column_stack([dN(c[0],p)@u[0] for p in range(2)])
            for j in range(1,P+1):
                F=np.zeros(2)
                for p in range(1,j): F+=Amat(c[:j-p+1],j-p)@u[p]
                for p in range(0,j):
                    F+=(Amat(u[:j-p],j-1-p)-Amat(c[:j-p],j-1-p))@u[p]
                F+=Amat(c[:j]+[np.zeros(2)],j)@u[0]
                out.append(Nc@u[j]+Ups@c[j]+F)
            return np.concatenate(out)
        te=np.linspace(a,b,samples)
        s=solve_ivp(rhs,(a,b),np.concatenate(c),t_eval=te,rtol=1e-12,atol=1e-13,method='DOP853')
        left=[s.y[2*q:2*q+2,-1] for q in range(P+1)]
        ts_all.append(te); us_all.append(s.y)
    t=np.concatenate(ts_all); y=np.concatenate(us_all,axis=1)
    ex=np.array([np.sin(t),np.cos(t)])
    acc=np.zeros_like(ex); errs=[]
    for p in range(P+1):
        acc=acc+y[2*p:2*p+2]; errs.append(np.max(np.linalg.norm(acc-ex,axis=0)))
    return errs
h=float(sys.argv[1]); P=int(sys.argv[2])
e=fd(h,6.0,P); print(h,P,["%.6e"%x for x in e]); print("ratios",[e[i+1]/e[i] for i in range(len(e)-1)])
